#include "locus/suite.hpp"

#include <bit>
#include <functional>

#include "locus/families.hpp"
#include "locus/functors.hpp"
#include "locus/gts.hpp"
#include "locus/maps.hpp"
#include "locus/random.hpp"
#include "locus/theorems.hpp"

namespace locus {

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (c.failures) return false;
  return true;
}

namespace {

class Checks {
 public:
  explicit Checks(SuiteReport& r) : r_(r) {}

  void run(const std::string& name, const std::function<std::optional<std::string>()>& body) {
    SuiteCheck& c = slot(name);
    ++c.cases;
    std::optional<std::string> bad;
    try {
      bad = body();
    } catch (const Error& e) {
      bad = std::string("error: ") + e.what();
    }
    if (!bad) return;
    if (c.failures++ == 0) c.first_failure = *bad;
  }

 private:
  SuiteCheck& slot(const std::string& name) {
    for (auto& c : r_.checks)
      if (c.name == name) return c;
    r_.checks.push_back(SuiteCheck{name, 0, 0, std::nullopt});
    return r_.checks.back();
  }
  SuiteReport& r_;
};

std::optional<std::string> unless(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

SetValue L(PeriodicSet s) { return SetValue::line(std::move(s)); }

// ------------------------------------------------------------------ finite

void finite_round(Checks& checks, gen::Rng& rng) {
  const int n = 1 + static_cast<int>(rng() % 5);
  Space x = gen::finite_space(rng, n);
  const std::string label = format_family(x.smops());

  checks.run("decomposition", [&] {
    FFamily open = x.family(Derived::Open), small = x.family(Derived::Small);
    std::vector<Mask> both;
    for (Mask s : small.sets())
      if (open.contains(s)) both.push_back(s);
    return unless(FFamily(x.universe(), both) == x.smops(), label);
  });

  checks.run("compatibility", [&] {
    FFamily a = gen::finite_family(rng, n, 4);
    if (a.empty()) a = FFamily(FiniteUniverse(n), {0});
    a = intersection_closure(a);
    FFamily ao = compatible_sets(a, a.universe().full());
    return unless(ao.includes(a) && compatible_sets(ao, a.universe().full()) == ao, format_family(a));
  });

  checks.run("weak-closure", [&] {
    SetValue s = gen::subset(rng, x);
    SetValue c = x.wcl(s);
    const Mask carrier = x.carrier_mask();
    bool ok = (s.mask & ~c.mask) == 0 && x.is_weakly_open(SetValue::finite(carrier & ~c.mask)) && x.wcl(c) == c;
    // smallest weakly closed superset
    FFamily wo = x.family(Derived::WeaklyOpen);
    for (Mask u : wo.sets())
      if ((s.mask & u) == 0) ok = ok && (c.mask & u) == 0;
    return unless(ok, label + " on " + format_mask(s.mask));
  });

  checks.run("smallness", [&] { return unless(smallness_conditions(x, 20).agree(), label); });

  checks.run("functors", [&] {
    Space s = sm(x), p = pt(x);
    bool ok = classify_space(s).is_small && classify_space(p).is_partially_topological &&
              same_smops(sm(s), s) && same_smops(pt(p), p);
    BornUniverse u = ubor(p);
    ok = ok && same_smops(lss(u), p) && ubor(lss(u)) == u;
    return unless(ok, label);
  });

  checks.run("gts-round-trip", [&] {
    Gts g = from_space(x);
    ToSpaceResult back = to_space(g);
    return unless(check_axioms(g).all() && back.space.smops() == x.smops() && back.cov_is_ef, label);
  });

  checks.run("strict-continuity", [&] {
    SpaceMap f = gen::finite_map(rng, 1 + static_cast<int>(rng() % 3));
    ClassificationReport c = classify_map(f, {40, rng()});
    BcReport bc = check_bc_characterization(f, {40, 1});
    bool ok = c.strictly_continuous.holds == c.bounded_continuous.holds && bc.bc == c.bounded_continuous.holds;
    return unless(ok, to_string(f));
  });
}

// ------------------------------------------------------------------ interval

/// Smops probing openness: S is open iff S ∩ L is a smop for each of them.
std::vector<PeriodicSet> probe_smops(const Space& x, gen::Rng& rng) {
  const PeriodicSet& y = x.carrier();
  std::vector<PeriodicSet> raw{y};
  for (long n = -12; n <= 12; n += 3) {
    Rational c = make_rational(n, 2);
    raw.push_back(intersect(y, PeriodicSet::open_interval(c - make_rational(1, 4), c + make_rational(1, 4))));
    raw.push_back(intersect(y, PeriodicSet::open_interval(c - 2, c + 2)));
    raw.push_back(intersect(y, PeriodicSet::ray_above(c)));
    raw.push_back(intersect(y, PeriodicSet::ray_below(c)));
  }
  for (int i = 0; i < 10; ++i) raw.push_back(intersect(y, gen::open_periodic(rng)));
  std::vector<PeriodicSet> out;
  for (auto& s : raw)
    if (x.is_smop(L(s))) out.push_back(s);
  return out;
}

/// Points of s that decide relative openness: closed component ends and midpoints.
std::vector<Rational> deciding_points(const PeriodicSet& s) {
  std::vector<Rational> pts;
  QInterval range = s.hull_with_periods(2);
  IntervalList parts = s.materialize(range);
  for (const auto& part : parts.parts()) {
    const auto &lo = part.lo(), &hi = part.hi();
    if (!lo.infinite && lo.closed) pts.push_back(lo.value);
    if (!hi.infinite && hi.closed) pts.push_back(hi.value);
    if (!lo.infinite && !hi.infinite) pts.push_back((lo.value + hi.value) / 2);
  }
  return pts;
}

/// Direct weak openness: every deciding point has a smop neighbourhood inside s.
bool weakly_open_by_points(const Space& x, const PeriodicSet& s) {
  for (const Rational& p : deciding_points(s)) {
    bool found = false;
    for (Rational eps = make_rational(1, 4); !found && eps > make_rational(1, 4096); eps /= 4) {
      PeriodicSet nb = intersect(x.carrier(), PeriodicSet::open_interval(p - eps, p + eps));
      nb = unite(nb, intersect(x.carrier(), PeriodicSet::point(p)));
      found = is_subset(nb, s) && x.is_smop(L(nb));
    }
    if (!found) return false;
  }
  return true;
}

const BuiltinLine kLines[] = {BuiltinLine::om,   BuiltinLine::rom,   BuiltinLine::lom,
                              BuiltinLine::lpom, BuiltinLine::slom,  BuiltinLine::slpom,
                              BuiltinLine::st,   BuiltinLine::lst,   BuiltinLine::lpst};

void interval_round(Checks& checks, gen::Rng& rng, int i) {
  Space x = Space::builtin(kLines[i % 9]);
  if (rng() % 3 == 0) x = x.subspace(L(gen::periodic(rng)), x.name() + "|sub");
  std::vector<PeriodicSet> probes = probe_smops(x, rng);
  PeriodicSet raw = rng() % 2 ? gen::open_periodic(rng) : gen::periodic(rng);
  SetValue s = L(intersect(raw, x.carrier()));
  const std::string label = x.name() + " on " + to_string(s.set);

  checks.run("decomposition", [&] {
    return unless(x.is_smop(s) == (x.is_small_set(s) && x.is_open_set(s)), label);
  });
  checks.run("open-rule", [&] {
    bool by_probe = true;
    for (const auto& l : probes) by_probe = by_probe && x.is_smop(L(intersect(s.set, l)));
    return unless(by_probe == x.is_open_set(s), label);
  });
  checks.run("weakly-open-rule", [&] { return unless(weakly_open_by_points(x, s.set) == x.is_weakly_open(s), label); });
  checks.run("smop-lattice", [&] {
    if (!x.is_smop(s) || probes.empty()) return unless(true, "");
    const PeriodicSet& l = probes[rng() % probes.size()];
    return unless(x.is_smop(L(unite(s.set, l))) && x.is_smop(L(intersect(s.set, l))), label);
  });
  checks.run("weak-closure", [&] {
    SetValue c = x.wcl(s);
    bool ok = is_subset(s.set, c.set) && is_subset(c.set, x.carrier()) &&
              x.is_weakly_open(L(subtract(x.carrier(), c.set))) && x.wcl(c) == c;
    // every point added lies in the order closure of s
    for (const Rational& p : deciding_points(c.set))
      if (!s.set.contains(p)) ok = ok && closure(s.set).contains(p);
    return unless(ok, label);
  });
  checks.run("set-algebra", [&] {
    PeriodicSet a = gen::periodic(rng), b = gen::periodic(rng);
    PeriodicSet u = unite(a, b), n = intersect(a, b), d = subtract(a, b);
    for (int k = 0; k < 24; ++k) {
      Rational p = gen::grid_rational(rng, 8, 4);
      bool ia = a.contains(p), ib = b.contains(p);
      if (u.contains(p) != (ia || ib) || n.contains(p) != (ia && ib) || d.contains(p) != (ia && !ib))
        return unless(false, to_string(a) + " / " + to_string(b) + " at " + to_string(p));
    }
    return unless(true, "");
  });
  checks.run("family-implications", [&] {
    PeriodicSet base = PeriodicSet::open_interval(0, make_rational(1 + static_cast<long>(rng() % 4), 2));
    std::optional<Integer> first, last;
    if (rng() % 2) first = Integer(0);
    if (rng() % 2) last = Integer(static_cast<long>(rng() % 5));
    if (first && last && *last < *first) last = first;
    Family f = Family::translates({base, make_rational(1 + static_cast<long>(rng() % 2), 1), first, last, x.carrier()});
    if (non_open_member(x, f)) return unless(true, "");
    FamilyReport r = classify_family(x, f);
    bool ok = (!r.locally_finite || r.admissible) && (!r.essentially_finite || r.admissible) &&
              (!r.union_open || r.union_weakly_open);
    return unless(ok, to_string(f) + " in " + x.name());
  });
}

}  // namespace

SuiteReport random_suite(Backend backend, int iters, std::uint64_t seed) {
  SuiteReport r;
  r.backend = backend;
  r.iters = iters;
  r.seed = seed;
  Checks checks(r);
  gen::Rng rng(seed);
  for (int i = 0; i < iters; ++i) {
    if (backend == Backend::Finite) finite_round(checks, rng);
    else interval_round(checks, rng, i);
  }
  return r;
}

}  // namespace locus
