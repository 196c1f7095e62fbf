#include "locus/glue.hpp"

namespace locus {

namespace {

std::string chart_label(const std::vector<Space>& charts, std::size_t i) {
  return "chart " + std::to_string(i + 1) + " (" + charts[i].name() + ")";
}

Space translated_chart(const PeriodicAtlas& atlas, const Integer& k) {
  return Space::line(translate(atlas.chart.carrier(), Rational(k) * atlas.step), atlas.chart.shape(),
                     atlas.chart.name() + "+" + k.get_str());
}

void require_periodic_chart(const PeriodicAtlas& atlas) {
  if (atlas.chart.backend() != Backend::Interval) fail(Error::Kind::Usage, "periodic atlas needs a line chart");
  if (!atlas.chart.carrier().is_bounded()) fail(Error::Kind::Precondition, "periodic chart carrier must be bounded");
  if (atlas.chart.carrier().is_empty()) fail(Error::Kind::Precondition, "periodic chart carrier is empty");
  if (atlas.step <= 0) fail(Error::Kind::Precondition, "glue step must be positive");
}

/// Bounded test sets around [lo, hi]: open and closed grid intervals and pairs of them.
std::vector<PeriodicSet> probe_sets(const Rational& lo, const Rational& hi, const Rational& unit) {
  std::vector<PeriodicSet> out;
  Rational d = unit / 4;
  std::vector<PeriodicSet> singles;
  for (Rational a = lo - unit; a <= hi + unit; a += d) {
    for (Rational w : std::vector<Rational>{d, 2 * d, unit, 2 * unit}) {
      singles.push_back(PeriodicSet::open_interval(a, a + w));
      singles.push_back(PeriodicSet::from_interval(QInterval::closed(a, a + w)));
    }
  }
  out = singles;
  for (std::size_t i = 0; i + 7 < singles.size(); i += 7) out.push_back(unite(singles[i], singles[i + 7]));
  return out;
}

}  // namespace

std::optional<StarViolation> check_star(const std::vector<Space>& charts) {
  for (const auto& c : charts)
    if (c.backend() != Backend::Finite) fail(Error::Kind::Usage, "finite atlases take finite charts; use a periodic atlas on the line");
  for (std::size_t i = 0; i < charts.size(); ++i) {
    for (std::size_t j = i + 1; j < charts.size(); ++j) {
      const Space& a = charts[i];
      const Space& b = charts[j];
      if (!(a.universe() == b.universe())) fail(Error::Kind::Usage, "charts over different universes");
      Mask overlap = a.carrier_mask() & b.carrier_mask();
      for (const Space* c : {&a, &b}) {
        if (!c->is_open_set(SetValue::finite(overlap))) {
          return StarViolation{chart_label(charts, i), chart_label(charts, j), "overlap-open",
                               "overlap " + format_mask(overlap) + " is not open in " +
                                   chart_label(charts, c == &a ? i : j)};
        }
      }
      FFamily ta = family_trace(a.smops(), b.carrier_mask());
      FFamily tb = family_trace(b.smops(), a.carrier_mask());
      if (!(ta == tb)) {
        return StarViolation{chart_label(charts, i), chart_label(charts, j), "trace-equal",
                             "traces on the overlap differ: " + format_family(ta) + " vs " + format_family(tb)};
      }
    }
  }
  return std::nullopt;
}

Integer overlap_reach(const PeriodicAtlas& atlas) {
  const PeriodicSet& c = atlas.chart.carrier();
  return ceil_int((*c.supremum() - *c.infimum()) / atlas.step) + 1;
}

std::optional<StarViolation> check_star(const PeriodicAtlas& atlas) {
  require_periodic_chart(atlas);
  const Space& base = atlas.chart;
  const PeriodicSet& c0 = base.carrier();
  Integer reach = overlap_reach(atlas);
  // By translation invariance, chart i against chart j is chart 0 against chart j - i.
  for (Integer k = 1; k <= reach; ++k) {
    Space other = translated_chart(atlas, k);
    PeriodicSet overlap = intersect(c0, other.carrier());
    if (overlap.is_empty()) continue;
    std::string label = "chart 0", label_k = "chart " + k.get_str();
    for (const Space* c : std::vector<const Space*>{&base, &other}) {
      if (!c->is_open_set(SetValue::line(overlap))) {
        return StarViolation{label, label_k, "overlap-open",
                             "overlap " + to_string(overlap) + " is not open in " + (c == &base ? label : label_k)};
      }
    }
    // Both traces are the subspace structures induced on the overlap.
    Space trace_a = base.subspace(SetValue::line(overlap));
    Space trace_b = other.subspace(SetValue::line(overlap));
    if (!(trace_a.effective_shape() == trace_b.effective_shape())) {
      return StarViolation{label, label_k, "trace-equal", "charts induce different structures on the overlap"};
    }
    for (const auto& probe : probe_sets(*c0.infimum(), *c0.supremum(), atlas.step)) {
      PeriodicSet t = intersect(probe, c0);
      if (!base.is_smop(SetValue::line(t))) continue;
      if (!other.is_smop(SetValue::line(intersect(t, overlap))))
        return StarViolation{label, label_k, "trace-equal",
                             "trace of " + to_string(t) + " on the overlap is not a smop of " + label_k};
      PeriodicSet u = intersect(translate(probe, Rational(k) * atlas.step), other.carrier());
      if (other.is_smop(SetValue::line(u)) && !base.is_smop(SetValue::line(intersect(u, overlap))))
        return StarViolation{label, label_k, "trace-equal",
                             "trace of " + to_string(u) + " on the overlap is not a smop of " + label};
    }
  }
  return std::nullopt;
}

GlueResult glue(const std::vector<Space>& charts, std::string name) {
  if (charts.empty()) fail(Error::Kind::Precondition, "an atlas needs at least one chart");
  if (auto v = check_star(charts))
    fail(Error::Kind::Precondition, "(*) fails for " + v->first + ", " + v->second + ": " + v->detail);
  const FiniteUniverse& u = charts.front().universe();
  FFamily all(u);
  Mask carrier = 0;
  for (const auto& c : charts) {
    all = family_union(all, c.smops());
    carrier |= c.carrier_mask();
  }
  FFamily ring = generate_ring(all);
  GlueResult r{Space::finite(u, carrier, ring, std::move(name)), true, true, true, {}};
  r.ring_is_finite_unions = ring == union_closure(all);
  std::vector<SetValue> carriers;
  for (std::size_t i = 0; i < charts.size(); ++i) {
    const Space& c = charts[i];
    carriers.push_back(SetValue::finite(c.carrier_mask()));
    bool open = r.space.is_open_set(carriers.back());
    bool same = family_trace(ring, c.carrier_mask()) == c.smops();
    if (!(open && same)) {
      r.charts_open_subspaces = false;
      r.detail = chart_label(charts, i) + (open ? " gets other smops from the union" : " is not open in the union");
    }
  }
  r.charts_admissible = classify_family(r.space, Family::list(carriers)).admissible;
  return r;
}

GlueResult glue(const PeriodicAtlas& atlas, std::string name) {
  if (auto v = check_star(atlas))
    fail(Error::Kind::Precondition, "(*) fails for " + v->first + ", " + v->second + ": " + v->detail);
  const PeriodicSet& c0 = atlas.chart.carrier();
  GlueResult r{Space::glued({c0, atlas.step, atlas.chart.shape()}, std::move(name)), true, true, true, {}};
  const Space& x = r.space;
  // Open and small predicates of line spaces are read off the carrier
  // topology, which matches the glued structure only when charts are open in it.
  if (!relatively_open(c0, x.carrier()))
    fail(Error::Kind::Precondition, "chart carrier " + to_string(c0) + " is not relatively open in the union " +
                                        to_string(x.carrier()));

  // Finite unions of chart smops against the equivalent description:
  // bounded relatively open subsets of the union.
  Space bounded_open = Space::line(x.carrier(), {SideCond::Bounded, SideCond::Bounded}, "bounded-open");
  Integer reach = overlap_reach(atlas);
  Rational lo = *c0.infimum() - Rational(reach) * atlas.step;
  Rational hi = *c0.supremum() + Rational(reach) * atlas.step;
  std::vector<PeriodicSet> probes = probe_sets(lo, hi, atlas.step);
  for (const auto& p : probes) {
    SetValue t = SetValue::line(intersect(p, x.carrier()));
    if (x.is_smop(t) != bounded_open.is_smop(t)) {
      r.ring_is_finite_unions = false;
      r.detail = "chart-union predicate and bounded-open predicate disagree on " + to_string(t.set);
    }
  }

  for (Integer k = -reach; k <= reach; ++k) {
    Space chart = translated_chart(atlas, k);
    if (!x.is_open_set(chart.carrier_value())) {
      r.charts_open_subspaces = false;
      r.detail = "chart " + k.get_str() + " is not open in the union";
      continue;
    }
    for (const auto& p : probes) {
      SetValue t = SetValue::line(intersect(p, x.carrier()));
      SetValue on_chart = SetValue::line(intersect(t.set, chart.carrier()));
      bool lost = x.is_smop(t) && !chart.is_smop(on_chart);
      bool gained = chart.is_smop(on_chart) && !x.is_smop(on_chart);
      if (lost || gained) {
        r.charts_open_subspaces = false;
        r.detail = "chart " + k.get_str() + " gets other smops from the union near " + to_string(t.set);
      }
    }
  }
  Family carriers = Family::translates({c0, atlas.step, std::nullopt, std::nullopt, std::nullopt});
  r.charts_admissible = classify_family(x, carriers).admissible;
  return r;
}

bool canonical_self_union(const Space& x) {
  std::vector<Space> charts;
  for (Mask l : x.smops().sets()) charts.push_back(x.subspace(SetValue::finite(l), format_mask(l)));
  GlueResult r = glue(charts, x.name());
  return r.space.carrier_mask() == x.carrier_mask() && r.space.smops() == x.smops();
}

}  // namespace locus
