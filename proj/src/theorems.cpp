#include "locus/theorems.hpp"

#include <bit>
#include <functional>
#include <map>
#include <sstream>

#include "locus/families.hpp"
#include "locus/functors.hpp"
#include "locus/glue.hpp"
#include "locus/gts.hpp"
#include "locus/maps.hpp"
#include "locus/properties.hpp"
#include "locus/random.hpp"

namespace locus {

namespace {

const std::vector<BuiltinLine> kBuiltins{BuiltinLine::om,    BuiltinLine::rom, BuiltinLine::lom,
                                         BuiltinLine::lpom,  BuiltinLine::slom, BuiltinLine::slpom,
                                         BuiltinLine::st,    BuiltinLine::lst, BuiltinLine::lpst};

SetValue L(PeriodicSet s) { return SetValue::line(std::move(s)); }

/// Collects instance outcomes; the first failure becomes the counterwitness.
class Recorder {
 public:
  explicit Recorder(TheoremReport& r) : r_(r) {}

  void check(bool ok, const std::string& what) {
    ++r_.instances;
    if (ok) return;
    if (r_.holds) r_.counterwitness = what;
    r_.holds = false;
    r_.lines.push_back("FAIL " + what);
  }
  void note(const std::string& line) { r_.lines.push_back(line); }

 private:
  TheoremReport& r_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

SetValue sample_set(gen::Rng& rng, const Space& x, int i) {
  switch (i % 3) {
    case 0: return gen::subset(rng, x);
    case 1: return gen::weakly_open(rng, x);
    default: return gen::smop(rng, x);
  }
}

Space random_finite(gen::Rng& rng, int max_points) {
  return gen::finite_space(rng, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_points)));
}

/// Runs `body`, turning library errors into a failed instance.
void guarded(Recorder& rec, const std::string& label, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    rec.check(false, label + ": " + e.what());
  }
}

// ---------------------------------------------------------------- smallness

std::vector<Family> smallness_catalog(const Space& x) {
  const PeriodicSet& y = x.carrier();
  std::optional<PeriodicSet> clip;
  if (!y.is_line()) clip = y;
  auto pairs = [&](std::optional<Integer> first, std::optional<Integer> last) {
    return Family::translates({PeriodicSet::open_interval(-1, 1), 1, first, last, clip});
  };
  std::vector<Family> out;
  out.push_back(pairs(std::nullopt, std::nullopt));
  out.push_back(Family::union_of({Family::list({L(intersect(PeriodicSet::ray_below(1), y))}), pairs(Integer(0), std::nullopt)}));
  out.push_back(Family::union_of({Family::list({L(intersect(PeriodicSet::ray_above(-1), y))}), pairs(std::nullopt, Integer(0))}));
  out.push_back(Family::translates({PeriodicSet::open_interval(0, 1), 1, std::nullopt, std::nullopt, clip}));
  out.push_back(Family::list({x.carrier_value()}));
  if (y.is_line()) out.push_back(Family::chain({PeriodicSet::open_interval(-1, 1), 1, 0, 1}));
  return out;
}

/// Sets on which open and smop can differ on the line.
std::vector<SetValue> open_probe_sets(const Space& x) {
  const PeriodicSet& y = x.carrier();
  IntervalList half(std::vector<QInterval>{QInterval::open(0, make_rational(1, 2))});
  std::vector<PeriodicSet> raw{PeriodicSet::line(),
                               PeriodicSet::ray_above(0),
                               PeriodicSet::ray_below(0),
                               PeriodicSet::translates_union(half, 1, Integer(0), std::nullopt),
                               PeriodicSet::translates_union(half, 1, std::nullopt, Integer(0)),
                               PeriodicSet::translates_union(half, 1, std::nullopt, std::nullopt)};
  std::vector<SetValue> out;
  for (const auto& s : raw) out.push_back(L(intersect(s, y)));
  return out;
}

}  // namespace

bool SmallnessConditions::agree() const {
  for (bool b : holds)
    if (b != holds[0]) return false;
  return true;
}

SmallnessConditions smallness_conditions(const Space& x, int samples, std::uint64_t seed) {
  SmallnessConditions out;
  const SetValue carrier = x.carrier_value();
  out.holds[0] = x.is_smop(carrier);
  if (!out.holds[0]) out.witness[0] = "carrier " + format_set(x, carrier) + " is not a smop";

  if (x.backend() == Backend::Finite) {
    const Mask c = x.carrier_mask();
    FFamily small = x.family(Derived::Small);
    out.holds[1] = small.size() == (std::size_t{1} << std::popcount(c));
    if (!out.holds[1]) out.witness[1] = "not every subset is small";
    out.holds[2] = x.family(Derived::Smop) == x.family(Derived::Open);
    if (!out.holds[2]) {
      FFamily open = x.family(Derived::Open);
      for (Mask a : open.sets())
        if (!x.smops().contains(a)) {
          out.witness[2] = "open non-smop " + format_mask(a);
          break;
        }
    }
    // Every family over a finite carrier has at most 2^|X| distinct members,
    // so the smop family itself is a finite admissible cover.
    Gts g = from_space(x);
    bool all_ef = true;
    for (std::uint32_t code = 0; code < g.subfamily_count() && all_ef; ++code) {
      if (!g.admissible(code)) continue;
      all_ef = g.union_at(code) == g.family_at(code).union_of();
    }
    out.holds[3] = out.holds[4] = all_ef;
    return out;
  }

  gen::Rng rng(seed);
  out.holds[1] = x.is_small_set(carrier);
  if (!out.holds[1]) out.witness[1] = "carrier " + format_set(x, carrier) + " is not small";
  for (int i = 0; i < samples && out.holds[1]; ++i) {
    SetValue s = gen::subset(rng, x);
    if (!x.is_small_set(s)) {
      out.holds[1] = false;
      out.witness[1] = "set " + format_set(x, s) + " is not small";
    }
  }

  out.holds[2] = x.derived_shape(Derived::Open) == x.derived_shape(Derived::Smop);
  std::optional<SetValue> diff;
  for (const auto& s : open_probe_sets(x))
    if (x.is_open_set(s) != x.is_smop(s)) {
      diff = s;
      break;
    }
  for (int i = 0; i < samples && !diff; ++i) {
    SetValue s = gen::weakly_open(rng, x);
    if (x.is_open_set(s) != x.is_smop(s)) diff = s;
  }
  if (out.holds[2] && diff)
    fail(Error::Kind::Internal, "open/smop shapes agree but " + format_set(x, *diff) + " separates them");
  if (!out.holds[2]) out.witness[2] = diff ? "open non-smop " + format_set(x, *diff) : "search-bounded";

  out.holds[3] = out.holds[4] = true;
  out.witness[3] = out.witness[4] = {};
  for (const auto& f : smallness_catalog(x)) {
    if (non_open_member(x, f)) continue;
    FamilyReport r = classify_family(x, f);
    if (!r.admissible || r.essentially_finite) continue;
    if (out.holds[3]) {
      out.holds[3] = false;
      out.witness[3] = "admissible, not essentially finite: " + to_string(f);
    }
    if (out.holds[4] && r.union_set == carrier) {
      out.holds[4] = false;
      out.witness[4] = "admissible cover, not essentially finite: " + to_string(f);
    }
  }
  if (out.holds[3] != out.holds[0] && out.holds[3]) out.witness[3] = "search-bounded";
  if (out.holds[4] != out.holds[0] && out.holds[4]) out.witness[4] = "search-bounded";
  return out;
}

namespace {

// ---------------------------------------------------------------- theorems

void lemma_aoo(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    int n = 1 + static_cast<int>(rng() % 5);
    FFamily a = gen::finite_family(rng, n, 4);
    if (a.empty()) a = FFamily(FiniteUniverse(n), {0});
    a = intersection_closure(a);
    const Mask full = a.universe().full();
    FFamily ao = compatible_sets(a, full);
    FFamily aoo = compatible_sets(ao, full);
    rec.check(ao.includes(a) && aoo == ao, "A = " + format_family(a));
  }
  rec.note(std::to_string(o.iters) + " intersection-closed families on at most 5 points");
}

void prop_decomposition(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 5);
    FFamily open = x.family(Derived::Open);
    std::vector<Mask> both;
    FFamily small = x.family(Derived::Small);
    for (Mask s : small.sets())
      if (open.contains(s)) both.push_back(s);
    rec.check(FFamily(x.universe(), both) == x.smops(), "L = " + format_family(x.smops()));
  }
  for (BuiltinLine id : kBuiltins) {
    Space x = Space::builtin(id);
    int bad = 0;
    std::string first;
    for (int i = 0; i < o.samples; ++i) {
      SetValue s = sample_set(rng, x, i);
      if (x.is_smop(s) != (x.is_small_set(s) && x.is_open_set(s))) {
        if (bad++ == 0) first = format_set(x, s);
      }
    }
    rec.check(bad == 0, x.name() + ": " + first);
    rec.note(x.name() + ": " + std::to_string(o.samples) + " sampled sets, " + std::to_string(bad) + " disagreements");
  }
}

void thm_smallness(Recorder& rec, const VerifyOptions& o) {
  std::map<BuiltinLine, bool> expected{{BuiltinLine::om, true},     {BuiltinLine::rom, true},  {BuiltinLine::st, true},
                                       {BuiltinLine::slom, true},   {BuiltinLine::lom, false}, {BuiltinLine::lpom, false},
                                       {BuiltinLine::lst, false},   {BuiltinLine::lpst, false}, {BuiltinLine::slpom, false}};
  auto line = [](const SmallnessConditions& c) {
    std::string s;
    for (bool b : c.holds) s += b ? '1' : '0';
    return s;
  };
  for (BuiltinLine id : kBuiltins) {
    Space x = Space::builtin(id);
    SmallnessConditions c = smallness_conditions(x, o.samples, o.seed);
    rec.check(c.agree() && c.holds[0] == expected[id], x.name() + " conditions " + line(c));
    rec.note(x.name() + ": " + (c.holds[0] ? "small" : "not small") + " [" + line(c) + "]");
  }
  Space lom = Space::builtin(BuiltinLine::lom);
  Space om = Space::builtin(BuiltinLine::om);
  std::vector<std::pair<Space, bool>> subs{
      {lom.subspace(L(PeriodicSet::open_interval(0, 1)), "lom|(0,1)"), true},
      {lom.subspace(L(PeriodicSet::ray_above(0)), "lom|(0,inf)"), false},
      {om.subspace(L(PeriodicSet::ray_above(0)), "om|(0,inf)"), true},
      {Space::builtin(BuiltinLine::lpom).subspace(L(PeriodicSet::ray_below(0)), "l+om|(-inf,0)"), true}};
  for (const auto& [x, small] : subs) {
    SmallnessConditions c = smallness_conditions(x, o.samples, o.seed);
    rec.check(c.agree() && c.holds[0] == small, x.name() + " conditions " + line(c));
    rec.note(x.name() + ": " + (c.holds[0] ? "small" : "not small") + " [" + line(c) + "]");
  }
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 4);
    SmallnessConditions c = smallness_conditions(x, o.samples, o.seed);
    rec.check(c.agree(), "finite L = " + format_family(x.smops()) + " conditions " + line(c));
  }
}

void example_unit_intervals(Recorder& rec, const VerifyOptions&) {
  Space om = Space::builtin(BuiltinLine::om);
  Family f = Family::translates({PeriodicSet::open_interval(0, 1), 1, std::nullopt, std::nullopt, std::nullopt});
  FamilyReport r = classify_family(om, f);
  rec.note("family " + to_string(f) + " in om");
  rec.note("locally finite: " + yes_no(r.locally_finite) +
           (r.lf_witness ? " (witness " + format_set(om, *r.lf_witness) + ")" : ""));
  rec.note("admissible: " + yes_no(r.admissible) +
           (r.admissible_witness ? " (witness " + format_set(om, *r.admissible_witness) + ")" : ""));
  rec.note("union open: " + yes_no(r.union_open));
  rec.note("union weakly open: " + yes_no(r.union_weakly_open));
  rec.check(!r.locally_finite, "locally finite");
  rec.check(!r.admissible, "admissible");
  rec.check(!r.union_open, "union open");
  rec.check(r.union_weakly_open, "union not weakly open");
}

void example_identity_maps(Recorder& rec, const VerifyOptions& o) {
  MapCheckOptions mo{o.samples, o.seed};
  Space om = Space::builtin(BuiltinLine::om), lom = Space::builtin(BuiltinLine::lom);
  ClassificationReport a = classify_map(SpaceMap::identity(om, lom), mo);
  rec.note("id om -> lom: continuous " + yes_no(a.continuous.holds) + ", bounded " + yes_no(a.bounded.holds) +
           (a.bounded.witness ? " (witness " + format_set(om, *a.bounded.witness) + ")" : ""));
  rec.check(a.continuous.holds && !a.bounded.holds, "id om -> lom");
  ClassificationReport b = classify_map(SpaceMap::identity(lom, om), mo);
  rec.note("id lom -> om: bounded continuous " + yes_no(b.bounded_continuous.holds));
  rec.check(b.bounded_continuous.holds, "id lom -> om");
}

void lemma_bcsc(Recorder& rec, const VerifyOptions& o) {
  MapCheckOptions mo{o.samples, o.seed};
  int strict = 0;
  auto one = [&](const SpaceMap& f) {
    guarded(rec, to_string(f), [&] {
      ClassificationReport c = classify_map(f, mo);
      BcReport bc = check_bc_characterization(f, mo);
      bool ok = c.strictly_continuous.holds == c.bounded_continuous.holds && bc.bc == c.bounded_continuous.holds;
      strict += c.strictly_continuous.holds;
      rec.check(ok, to_string(f));
    });
  };
  std::vector<SpaceMap> catalog = map_catalog();
  for (const auto& f : catalog) one(f);
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) one(gen::finite_map(rng, 1 + static_cast<int>(rng() % 3)));
  rec.note(std::to_string(catalog.size()) + " catalog maps and " + std::to_string(o.iters) + " random finite maps; " +
           std::to_string(strict) + " strictly continuous");
}

void prop_glue(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space whole = gen::finite_space(rng, 2 + static_cast<int>(rng() % 4));
    FFamily open = whole.family(Derived::Open);
    std::vector<Space> charts;
    Mask carrier = 0;
    for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k) {
      Mask c = open.sets()[rng() % open.size()];
      carrier |= c;
      charts.push_back(whole.subspace(SetValue::finite(c), format_mask(c)));
    }
    guarded(rec, "atlas in " + format_family(whole.smops()), [&] {
      GlueResult r = glue(charts);
      bool ok = r.ring_is_finite_unions && r.charts_open_subspaces && r.charts_admissible &&
                r.space.smops() == whole.subspace(SetValue::finite(carrier)).smops();
      rec.check(ok, "atlas in " + format_family(whole.smops()) + ": " + r.detail);
    });
  }
  rec.note(std::to_string(o.iters) + " random star-compatible finite atlases");

  Space chart = Space::builtin(BuiltinLine::st).subspace(L(PeriodicSet::open_interval(-1, 1)), "(-1,1)");
  guarded(rec, "periodic atlas", [&] {
    GlueResult r = glue(PeriodicAtlas{chart, 1}, "glued");
    rec.check(r.ring_is_finite_unions && r.charts_open_subspaces && r.charts_admissible, "periodic atlas clauses");
    Space lom = Space::builtin(BuiltinLine::lom);
    int bad = 0;
    for (int i = 0; i < o.samples; ++i) {
      SetValue s = sample_set(rng, lom, i);
      bad += r.space.is_smop(s) != lom.is_smop(s);
    }
    rec.check(bad == 0, "periodic atlas disagrees with lom on " + std::to_string(bad) + " sets");
    rec.note("periodic (-1,1) atlas, step 1: agrees with lom on " + std::to_string(o.samples - bad) + "/" +
             std::to_string(o.samples) + " sampled sets");
  });
}

std::vector<SetValue> nonempty_smops(const Space& x) {
  std::vector<SetValue> out;
  for (Mask l : x.smops().sets())
    if (l) out.push_back(SetValue::finite(l));
  return out;
}

bool valid_disconnection(const Space& x, const std::pair<SetValue, SetValue>& d) {
  if (x.backend() == Backend::Finite) {
    Mask a = d.first.mask, b = d.second.mask;
    return a && b && !(a & b) && (a | b) == x.carrier_mask() && x.is_open_set(d.first) && x.is_open_set(d.second);
  }
  return !d.first.set.is_empty() && !d.second.set.is_empty() && !intersects(d.first.set, d.second.set) &&
         unite(d.first.set, d.second.set) == x.carrier() && x.is_open_set(d.first) && x.is_open_set(d.second);
}

void thm_cpar(Recorder& rec, const VerifyOptions& o) {
  Space lom = Space::builtin(BuiltinLine::lom);
  Family pairs = Family::translates({PeriodicSet::open_interval(-1, 1), 1, std::nullopt, std::nullopt, std::nullopt});
  guarded(rec, "lom", [&] {
    ChainResult r = lindelof_from_paracompact(lom, pairs, L(PeriodicSet::open_interval(-1, 1)));
    bool chain_ok = r.outcome == Outcome::Done && r.prefix.size() >= 2;
    for (std::size_t n = 0; n < r.prefix.size(); ++n)
      chain_ok = chain_ok && r.prefix[n].set == PeriodicSet::open_interval(-Rational(n) - 1, Rational(n) + 1);
    rec.check(chain_ok, "lom chain: " + r.detail);
    rec.check(r.cover && verify_lindelof_witness(lom, *r.cover).holds, "lom cover does not verify");
    rec.note("lom, cover {(k-1,k+1)}, seed (-1,1): " + outcome_name(r.outcome) + ", M_n = (-n-1,n+1) for n < " +
             std::to_string(r.prefix.size()));
  });
  Space two = lom.subspace(L(unite(PeriodicSet::open_interval(0, 1), PeriodicSet::open_interval(2, 3))), "two");
  guarded(rec, "two intervals", [&] {
    Family parts = Family::list({L(PeriodicSet::open_interval(0, 1)), L(PeriodicSet::open_interval(2, 3))});
    ChainResult r = lindelof_from_paracompact(two, parts, L(PeriodicSet::open_interval(0, 1)));
    rec.check(r.outcome == Outcome::Disconnected && r.disconnection && valid_disconnection(two, *r.disconnection),
              "two intervals: " + r.detail);
  });
  gen::Rng rng(o.seed);
  int done = 0, split = 0;
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 4);
    std::vector<SetValue> smops = nonempty_smops(x);
    if (smops.empty()) continue;
    guarded(rec, "finite " + format_family(x.smops()), [&] {
      ChainResult r = lindelof_from_paracompact(x, Family::list(smops), smops[rng() % smops.size()]);
      bool ok = false;
      if (r.outcome == Outcome::Done) {
        ok = r.cover && verify_lindelof_witness(x, *r.cover).holds;
        ++done;
      } else if (r.outcome == Outcome::Disconnected) {
        ok = r.disconnection && valid_disconnection(x, *r.disconnection);
        ++split;
      }
      rec.check(ok, "finite " + format_family(x.smops()) + ": " + r.detail);
    });
  }
  rec.note(std::to_string(done) + " finite covers chained, " + std::to_string(split) + " disconnections found");
}

void thm_stlind(Recorder& rec, const VerifyOptions& o) {
  Space lom = Space::builtin(BuiltinLine::lom);
  guarded(rec, "lom", [&] {
    rec.check(is_strongly_taut(lom), "lom not strongly taut");
    RefinementResult r = paracompact_from_lindelof(lom, Family::chain({PeriodicSet::open_interval(-1, 1), 1, 0, 1}));
    rec.check(r.outcome == Outcome::Done && r.cover && verify_paracompact_witness(lom, *r.cover).holds,
              "lom refinement: " + r.detail);
    bool shape = r.reindexed.size() > 6;
    for (int n = 1; shape && n < 5; ++n) {
      PeriodicSet w = subtract(r.reindexed[n + 1].set, closure(r.reindexed[n - 1].set));
      shape = w == unite(PeriodicSet::open_interval(-n - 2, -n), PeriodicSet::open_interval(n, n + 2));
    }
    rec.check(shape, "W_{n+2} differs from (-n-2,n+2) minus [-n,n]");
    rec.note("lom, chain {(-n,n)}: " + outcome_name(r.outcome) + ", W_{n+2} = (-n-2,n+2) minus [-n,n]");
  });
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 4);
    guarded(rec, "finite " + format_family(x.smops()), [&] {
      RefinementResult r = paracompact_from_lindelof(x, Family::list({x.carrier_value()}));
      rec.check(r.outcome == Outcome::Done && r.cover && verify_paracompact_witness(x, *r.cover).holds,
                "finite " + format_family(x.smops()) + ": " + r.detail);
    });
  }
}

void lemma_swo_o(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (BuiltinLine id : kBuiltins) {
    Space x = Space::builtin(id);
    Space p = pt(x);
    bool shapes = p.derived_shape(Derived::Open) == x.derived_shape(Derived::WeaklyOpen);
    int bad = 0;
    for (int i = 0; i < o.samples; ++i) {
      SetValue s = sample_set(rng, x, i);
      bad += p.is_open_set(s) != x.is_weakly_open(s);
    }
    rec.check(shapes && bad == 0, x.name() + ": " + std::to_string(bad) + " disagreements");
    rec.note(x.name() + ": open sets of L^swo match L^wo on " + std::to_string(o.samples) + " sampled sets");
  }
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 5);
    rec.check(pt(x).family(Derived::Open) == x.family(Derived::WeaklyOpen), "finite " + format_family(x.smops()));
  }
}

void thm_ubor_lss(Recorder& rec, const VerifyOptions& o) {
  for (BuiltinLine id : kBuiltins) {
    Space x = pt(Space::builtin(id));
    BornUniverse u = ubor(x);
    rec.check(same_smops(lss(u), x) && ubor(lss(u)) == u, x.name());
    rec.note(Space::builtin(id).name() + ": pt gives " + to_string(u));
  }
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = pt(random_finite(rng, 4));
    guarded(rec, "finite " + format_family(x.smops()), [&] {
      BornUniverse u = ubor(x);
      rec.check(same_smops(lss(u), x) && ubor(lss(u)) == u, "finite " + format_family(x.smops()));
    });
  }
}

void lemma_covx(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 4);
    guarded(rec, "finite " + format_family(x.smops()), [&] {
      rec.check(to_space(from_space(x)).cov_is_ef, "from space " + format_family(x.smops()));
    });
  }
  int generated = 0;
  for (int i = 0; i < o.iters; ++i) {
    int n = 1 + static_cast<int>(rng() % 3);
    FiniteUniverse u(n);
    FFamily psi = gen::finite_family(rng, n, 3);
    Gts g = generate_gt(u, u.full(), {psi});
    if (!check_axioms(g).all()) continue;
    try {
      ToSpaceResult t = to_space(g);
      rec.check(t.cov_is_ef, "generated from " + format_family(psi));
      ++generated;
    } catch (const Error& e) {
      if (e.kind() != Error::Kind::Precondition) rec.check(false, e.what());
    }
  }
  rec.note(std::to_string(generated) + " generated triples with a small open cover");
}

void lemma_smops(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 4);
    guarded(rec, "finite " + format_family(x.smops()), [&] {
      Space back = to_space(from_space(x)).space;
      rec.check(back.smops() == x.smops() && back.carrier_mask() == x.carrier_mask(),
                "finite " + format_family(x.smops()));
    });
  }
}

void thm_subsp(Recorder& rec, const VerifyOptions& o) {
  gen::Rng rng(o.seed);
  for (int i = 0; i < o.iters; ++i) {
    Space x = random_finite(rng, 4);
    Mask y = static_cast<Mask>(rng()) & x.carrier_mask();
    guarded(rec, "finite " + format_family(x.smops()), [&] {
      SubspaceCheck s = subspace_gts(x, y);
      bool ok = s.equal && to_space(s.induced).space.smops() == x.subspace(SetValue::finite(y)).smops();
      rec.check(ok, format_family(x.smops()) + " on " + format_mask(y));
    });
  }
}

struct Entry {
  const char* id;
  const char* anchor;
  void (*run)(Recorder&, const VerifyOptions&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {"lemma-Aoo", "an intersection-closed family lies in its compatible sets, and compatibility is idempotent",
       lemma_aoo},
      {"prop-L-eq-Ls-cap-Lo", "smops are exactly the sets that are small and open", prop_decomposition},
      {"thm-smallness", "five equivalent descriptions of a small space", thm_smallness},
      {"example-2.16", "unit intervals in om: neither locally finite nor admissible, union weakly open only",
       example_unit_intervals},
      {"example-om-lom-map", "identity om to lom is continuous and unbounded; lom to om is bounded continuous",
       example_identity_maps},
      {"lemma-bcsc", "strictly continuous iff bounded and continuous iff small images and open preimages", lemma_bcsc},
      {"prop-glu", "gluing a star-compatible atlas: finite unions of chart smops, open charts, admissible charts",
       prop_glue},
      {"thm-cpar", "connected paracompact implies Lindelof, via the chain of stars", thm_cpar},
      {"thm-stlind", "strongly taut Lindelof implies paracompact, via differences of closures", thm_stlind},
      {"lemma-swo-o", "open sets for the small weakly open smops are the weakly open sets", lemma_swo_o},
      {"thm-ubor-lss", "partially topological spaces and bornological universes with open basis correspond",
       thm_ubor_lss},
      {"lemma-covx", "admissible families are those essentially finite on each small open set", lemma_covx},
      {"lemma-smops", "small open sets of the triple built from a space are its smops", lemma_smops},
      {"thm-subsp", "tracing the generated topology gives the generated topology of the subspace", thm_subsp},
  };
  return table;
}

const Entry& find_entry(const std::string& id) {
  for (const auto& e : entries())
    if (id == e.id) return e;
  fail(Error::Kind::Usage, "unknown theorem id '" + id + "'");
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.emplace_back(e.id);
    return out;
  }();
  return ids;
}

std::string theorem_anchor(const std::string& id) { return find_entry(id).anchor; }

TheoremReport verify_theorem(const std::string& id, const VerifyOptions& options) {
  const Entry& e = find_entry(id);
  TheoremReport r;
  r.id = e.id;
  r.anchor = e.anchor;
  Recorder rec(r);
  try {
    e.run(rec, options);
  } catch (const Error& err) {
    rec.check(false, std::string("error: ") + err.what());
  }
  return r;
}

std::vector<TheoremReport> verify_all(const VerifyOptions& options) {
  std::vector<TheoremReport> out;
  for (const auto& id : theorem_ids()) out.push_back(verify_theorem(id, options));
  return out;
}

}  // namespace locus
