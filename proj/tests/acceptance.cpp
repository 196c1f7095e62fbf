// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Expected values come from the brute-force and pointwise oracles below, not
// from the library's own decision procedures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "locus/dsl.hpp"
#include "locus/dsl_run.hpp"
#include "locus/families.hpp"
#include "locus/functors.hpp"
#include "locus/glue.hpp"
#include "locus/gts.hpp"
#include "locus/maps.hpp"
#include "locus/properties.hpp"
#include "locus/suite.hpp"
#include "locus/theorems.hpp"
#include "test_support.hpp"

using namespace locus;
using Rng = std::mt19937_64;

namespace {

// ------------------------------------------------------------------ bookkeeping

struct Tally {
  long cases = 0;
  long failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

struct Result {
  bool pass;
  std::string detail;
};

Result summarize(const Tally& t, const std::string& summary) {
  if (t.failures == 0) return {true, summary + ", " + std::to_string(t.cases) + " checks"};
  return {false, std::to_string(t.failures) + "/" + std::to_string(t.cases) + " failed; first: " + t.first};
}

// ------------------------------------------------------------------ finite oracles

using Sets = std::vector<Mask>;

Sets sorted_unique(Sets s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool has(const Sets& s, Mask m) { return std::binary_search(s.begin(), s.end(), m); }

Sets subsets_of(Mask carrier) {
  Sets out;
  Mask sub = 0;
  do {
    out.push_back(sub);
    sub = (sub - carrier) & carrier;
  } while (sub != 0);
  return sorted_unique(out);
}

/// Closure of a family under pairwise ∪ and/or ∩, by fixpoint iteration.
Sets close(Sets s, bool unions, bool intersections) {
  s = sorted_unique(s);
  for (bool grew = true; grew;) {
    grew = false;
    Sets next = s;
    for (Mask a : s)
      for (Mask b : s) {
        if (unions && !has(s, a | b)) next.push_back(a | b), grew = true;
        if (intersections && !has(s, a & b)) next.push_back(a & b), grew = true;
      }
    s = sorted_unique(next);
  }
  return s;
}

/// Subsets S of the carrier whose trace on every member stays in the family.
Sets compat(const Sets& fam, Mask carrier) {
  Sets out;
  for (Mask s : subsets_of(carrier)) {
    bool ok = true;
    for (Mask a : fam) ok = ok && has(fam, s & a);
    if (ok) out.push_back(s);
  }
  return out;
}

/// Subsets of members.
Sets down(const Sets& fam, Mask carrier) {
  Sets out;
  for (Mask s : subsets_of(carrier))
    for (Mask a : fam)
      if ((s & ~a) == 0) {
        out.push_back(s);
        break;
      }
  return out;
}

/// All unions of subfamilies.
Sets unions(const Sets& fam) {
  Sets out{0};
  for (Mask a : fam) {
    Sets grown = out;
    for (Mask u : out) grown.push_back(u | a);
    out = sorted_unique(grown);
  }
  return out;
}

Sets random_sets(Rng& rng, int n, int max_count) {
  std::uniform_int_distribution<Mask> pick(0, (Mask{1} << n) - 1);
  std::uniform_int_distribution<int> count(1, max_count);
  Sets out;
  for (int i = count(rng); i > 0; --i) out.push_back(pick(rng));
  return out;
}

struct FSpace {
  int n;
  Mask carrier;
  Sets smops;
};

/// ∅ plus random sets, closed under ∪ and ∩; the carrier is their union.
FSpace random_fspace(Rng& rng, int max_n) {
  int n = 1 + static_cast<int>(rng() % max_n);
  Sets s = random_sets(rng, n, 4);
  s.push_back(0);
  s = close(s, true, true);
  Mask carrier = 0;
  for (Mask a : s) carrier |= a;
  return {n, carrier, s};
}

Space build(const FSpace& f, const std::string& name = "X") {
  FiniteUniverse u(f.n);
  return Space::finite(u, f.carrier, FFamily(u, f.smops), name);
}

std::string show(const Sets& s) { return format_family(FFamily(FiniteUniverse(16), s)); }

// ------------------------------------------------------------------ line oracles

SetValue L(PeriodicSet s) { return SetValue::line(std::move(s)); }

struct ShapeRow {
  BuiltinLine id;
  // per side: 'a' any, 'f' eventually empty or full, 'b' bounded
  char left, right;
  bool small;
};

// Expected smop shapes of the builtin lines inside the representable model.
const ShapeRow kRows[] = {
    {BuiltinLine::om, 'f', 'f', true},     {BuiltinLine::rom, 'f', 'f', true},
    {BuiltinLine::lom, 'b', 'b', false},   {BuiltinLine::lpom, 'f', 'b', false},
    {BuiltinLine::slom, 'a', 'a', true},   {BuiltinLine::slpom, 'b', 'a', false},
    {BuiltinLine::st, 'a', 'a', true},     {BuiltinLine::lst, 'b', 'b', false},
    {BuiltinLine::lpst, 'a', 'b', false},
};

const ShapeRow& row(BuiltinLine id) {
  for (const auto& r : kRows)
    if (r.id == id) return r;
  throw std::logic_error("no row");
}

/// Open in the line: no component has a finite closed endpoint. Endpoints
/// are read off a wide materialization and only trusted away from its edges.
bool open_in_line(const PeriodicSet& s) {
  QInterval inner = s.hull_with_periods(2), outer = s.hull_with_periods(4);
  IntervalList parts = s.materialize(outer);
  auto trusted = [&](const Rational& e) { return inner.contains(e); };
  for (const auto& p : parts.parts()) {
    if (!p.lo().infinite && p.lo().closed && trusted(p.lo().value)) return false;
    if (!p.hi().infinite && p.hi().closed && trusted(p.hi().value)) return false;
  }
  return true;
}

bool side_ok(char cond, TailState t) {
  switch (cond) {
    case 'b': return t == TailState::Empty;
    case 'f': return t != TailState::Periodic;
    default: return true;
  }
}

bool oracle_smop(BuiltinLine id, const PeriodicSet& s) {
  const ShapeRow& r = row(id);
  return open_in_line(s) && side_ok(r.left, s.left_tail()) && side_ok(r.right, s.right_tail());
}

/// A random representable set; every other one is open.
PeriodicSet random_line_set(Rng& rng, int i) {
  PeriodicSet s = test::random_periodic(rng);
  if (i % 2) s = interior(s);
  return s;
}

PeriodicSet open_iv(long a2, long b2) { return PeriodicSet::open_interval(make_rational(a2, 2), make_rational(b2, 2)); }

/// Random bounded open set with a few components on the half-integer grid.
PeriodicSet random_bounded_open(Rng& rng) {
  PeriodicSet s;
  int parts = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < parts; ++i) {
    long a = static_cast<long>(rng() % 13) - 6, len = 1 + static_cast<long>(rng() % 4);
    s = unite(s, open_iv(a, a + len));
  }
  return s;
}

// ------------------------------------------------------------------ criteria

Result c1_compatibility() {
  Rng rng(101);
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    int n = 1 + i % 5;
    FiniteUniverse u(n);
    Sets a = close(random_sets(rng, n, 5), false, true);
    Sets ao = compat(a, u.full());
    Sets aoo = compat(ao, u.full());
    bool incl = std::all_of(a.begin(), a.end(), [&](Mask m) { return has(ao, m); });
    FFamily lib(u, a);
    FFamily lib_o = compatible_sets(lib, u.full());
    FFamily lib_oo = compatible_sets(lib_o, u.full());
    t.check(incl && aoo == ao, "oracle on " + show(a));
    t.check(lib_o.sets() == ao && lib_oo == lib_o && lib_o.includes(lib), "library on " + show(a));
  }
  return summarize(t, "1000 families");
}

Result c2_decomposition() {
  Rng rng(202);
  Tally t;
  for (int i = 0; i < 500; ++i) {
    FSpace f = random_fspace(rng, 5);
    Space x = build(f);
    Sets lo = compat(f.smops, f.carrier), ls = down(f.smops, f.carrier), both;
    std::set_intersection(lo.begin(), lo.end(), ls.begin(), ls.end(), std::back_inserter(both));
    t.check(both == f.smops, "oracle L != Ls ∩ Lo on " + show(f.smops));
    t.check(x.family(Derived::Open).sets() == lo && x.family(Derived::Small).sets() == ls, "families of " + show(f.smops));
  }
  int sets = 0;
  for (const auto& r : kRows) {
    Space x = Space::builtin(r.id);
    for (int i = 0; i < 200; ++i, ++sets) {
      SetValue s = L(random_line_set(rng, i));
      bool smop = x.is_smop(s), small = x.is_small_set(s), open = x.is_open_set(s);
      t.check(smop == (small && open), x.name() + " three-way on " + to_string(s.set));
      t.check(smop == oracle_smop(r.id, s.set), x.name() + " smop oracle on " + to_string(s.set));
    }
  }
  return summarize(t, "500 finite spaces, " + std::to_string(sets) + " line sets");
}

Result c3_smallness() {
  Tally t;
  std::string table;
  for (const auto& r : kRows) {
    Space x = Space::builtin(r.id);
    SmallnessConditions c = smallness_conditions(x, 100, 3);
    t.check(c.agree(), x.name() + ": conditions disagree");
    t.check(c.holds[0] == r.small, x.name() + ": expected " + (r.small ? "small" : "not small"));
    t.check(classify_space(x).is_small == r.small, x.name() + ": classify_space");
    table += (table.empty() ? "" : " ") + x.name() + (c.holds[0] ? "=small" : "=not");
  }
  struct Sub {
    BuiltinLine id;
    PeriodicSet y;
    bool small;
  };
  const Sub subs[] = {{BuiltinLine::lom, open_iv(0, 2), true},
                      {BuiltinLine::lom, PeriodicSet::ray_above(0), false},
                      {BuiltinLine::om, PeriodicSet::ray_above(0), true},
                      {BuiltinLine::lpom, PeriodicSet::ray_below(0), true},
                      {BuiltinLine::lpst, PeriodicSet::ray_below(0), true},
                      {BuiltinLine::slpom, PeriodicSet::ray_below(0), false}};
  for (const auto& s : subs) {
    Space x = Space::builtin(s.id).subspace(L(s.y), "sub");
    SmallnessConditions c = smallness_conditions(x, 100, 3);
    t.check(c.agree() && c.holds[0] == s.small, builtin_name(s.id) + " on " + to_string(s.y));
  }
  Rng rng(303);
  for (int i = 0; i < 100; ++i) {
    Space x = build(random_fspace(rng, 4));
    SmallnessConditions c = smallness_conditions(x, 30, i);
    // finite locally small spaces are small: the carrier is the union of all smops
    t.check(c.agree() && c.holds[0], "finite " + format_family(x.smops()));
  }
  return summarize(t, table);
}

Result c4_example() {
  Tally t;
  TheoremReport r = verify_theorem("example-2.16");
  t.check(r.holds, "verify example-2.16 failed");
  Space om = Space::builtin(BuiltinLine::om);
  Family f = Family::translates({open_iv(0, 2), 1, std::nullopt, std::nullopt, std::nullopt});
  FamilyReport c = classify_family(om, f);
  t.check(!c.locally_finite, "locally finite");
  t.check(!c.admissible, "admissible");
  t.check(!c.union_open, "union open");
  t.check(c.union_weakly_open, "union not weakly open");
  // direct: the whole line is a smop of om meeting every member
  t.check(om.is_smop(L(PeriodicSet::line())), "line is not a smop of om");
  return summarize(t, "not locally finite, not admissible, union weakly open only");
}

/// Continuity of a finite table map by preimages: f⁻¹(M) ∈ L_X for every smop M of Y.
bool oracle_continuous(const FSpace& x, const FSpace& y, const std::vector<int>& img) {
  for (Mask m : y.smops) {
    Mask pre = 0;
    for (int p = 0; p < x.n; ++p)
      if (((x.carrier >> p) & 1U) && img[p] >= 0 && ((m >> img[p]) & 1U)) pre |= Mask{1} << p;
    if (!has(x.smops, pre)) return false;
  }
  return true;
}

Result c5_maps() {
  Tally t;
  Space om = Space::builtin(BuiltinLine::om), lom = Space::builtin(BuiltinLine::lom);
  ClassificationReport a = classify_map(SpaceMap::identity(om, lom));
  t.check(a.continuous.holds && !a.bounded.holds, "id om -> lom");
  ClassificationReport b = classify_map(SpaceMap::identity(lom, om));
  t.check(b.bounded_continuous.holds && b.continuous.holds && b.bounded.holds, "id lom -> om");
  auto catalog = map_catalog();
  t.check(catalog.size() >= 20, "catalog has " + std::to_string(catalog.size()) + " maps");
  for (const auto& f : catalog) {
    ClassificationReport c = classify_map(f, {200, 5});
    t.check(c.strictly_continuous.holds == (c.bounded.holds && c.continuous.holds), "catalog " + to_string(f));
  }
  Rng rng(505);
  for (int i = 0; i < 200; ++i) {
    FSpace x = random_fspace(rng, 4), y = random_fspace(rng, 4);
    while (y.carrier == 0) y = random_fspace(rng, 4);
    std::vector<int> img(x.n, -1), targets;
    for (int p = 0; p < y.n; ++p)
      if ((y.carrier >> p) & 1U) targets.push_back(p);
    for (int p = 0; p < x.n; ++p)
      if ((x.carrier >> p) & 1U) img[p] = targets[rng() % targets.size()];
    SpaceMap f = SpaceMap::finite(build(x, "X"), build(y, "Y"), FiniteTable{img});
    ClassificationReport c = classify_map(f, {60, static_cast<std::uint64_t>(i)});
    bool cont = oracle_continuous(x, y, img);
    t.check(c.strictly_continuous.holds == (c.bounded.holds && c.continuous.holds), "bcsc " + to_string(f));
    // both spaces are small, so every map is bounded
    t.check(c.bounded.holds && c.continuous.holds == cont && c.strictly_continuous.holds == cont,
            "oracle " + to_string(f));
  }
  return summarize(t, std::to_string(catalog.size()) + " catalog maps, 200 random finite maps");
}

Result c6_glue() {
  Tally t;
  Rng rng(606);
  int atlases = 0;
  while (atlases < 200) {
    FSpace f = random_fspace(rng, 5);
    if (f.carrier == 0) continue;
    // chart carriers: random nonempty smops until the carrier is covered
    Sets nonempty;
    for (Mask m : f.smops)
      if (m) nonempty.push_back(m);
    Sets carriers;
    Mask covered = 0;
    while (covered != f.carrier) {
      Mask c = nonempty[rng() % nonempty.size()];
      carriers.push_back(c);
      covered |= c;
    }
    Space x = build(f);
    std::vector<Space> charts;
    Sets chart_smops;
    for (std::size_t k = 0; k < carriers.size(); ++k) {
      charts.push_back(x.subspace(SetValue::finite(carriers[k]), "C" + std::to_string(k)));
      for (Mask m : f.smops)
        if ((m & ~carriers[k]) == 0) chart_smops.push_back(m);
    }
    GlueResult g = glue(charts);
    Sets expected = close(chart_smops, true, false);
    t.check(g.ring_is_finite_unions && g.charts_open_subspaces && g.charts_admissible, "clauses on " + show(f.smops));
    t.check(g.space.smops().sets() == expected && expected == f.smops, "glued smops on " + show(f.smops));
    ++atlases;
  }
  Space chart = Space::builtin(BuiltinLine::om).subspace(L(open_iv(-2, 2)), "U");
  GlueResult p = glue(PeriodicAtlas{chart, 1});
  t.check(p.ring_is_finite_unions && p.charts_open_subspaces && p.charts_admissible, "periodic clauses: " + p.detail);
  Space lom = Space::builtin(BuiltinLine::lom);
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    PeriodicSet s = i % 3 == 0 ? random_bounded_open(rng) : random_line_set(rng, i);
    bool glued = p.space.is_smop(L(s));
    bool ok = glued == lom.is_smop(L(s)) && glued == oracle_smop(BuiltinLine::lom, s);
    t.check(ok, "periodic atlas vs lom on " + to_string(s));
    agree += ok;
  }
  return summarize(t, "200 finite atlases, periodic atlas agrees with lom on " + std::to_string(agree) + "/500 sets");
}

Result c7_gts() {
  Tally t;
  Rng rng(707);
  for (int i = 0; i < 500; ++i) {
    FSpace f = random_fspace(rng, 4);
    Space x = build(f);
    Gts g = from_space(x);
    ToSpaceResult back = to_space(g);
    t.check(check_axioms(g).all() && back.space.smops().sets() == f.smops && back.space.carrier_mask() == f.carrier,
            "round trip " + show(f.smops));
  }
  for (int i = 0; i < 200; ++i) {
    FSpace f = random_fspace(rng, 4);
    FiniteUniverse u(f.n);
    Gts g = generate_gt(u, f.carrier, {FFamily(u, f.smops)});
    // every subfamily of a finite family is essentially finite on every set
    Gts expected = Gts::with_full_cov(u, f.carrier, FFamily(u, compat(f.smops, f.carrier)));
    t.check(g == expected, "generated " + show(f.smops));
  }
  for (int i = 0; i < 100; ++i) {
    FSpace f = random_fspace(rng, 4);
    Space x = build(f);
    Mask y = static_cast<Mask>(rng()) & f.carrier;
    SubspaceCheck s = subspace_gts(x, y);
    Sets traced;
    for (Mask m : f.smops) traced.push_back(m & y);
    Space sub = x.subspace(SetValue::finite(y), "Y");
    t.check(s.equal && s.traced == s.induced, "subspace two-sided on " + show(f.smops) + " | " + format_mask(y));
    t.check(sub.smops().sets() == sorted_unique(traced) && s.induced == from_space(sub),
            "subspace oracle on " + show(f.smops) + " | " + format_mask(y));
  }
  return summarize(t, "500 round trips, 200 generated, 100 subspaces");
}

Result c8_constructive() {
  Tally t;
  Space lom = Space::builtin(BuiltinLine::lom);
  Family pairs = Family::translates({open_iv(-2, 2), 1, std::nullopt, std::nullopt, std::nullopt});
  ChainResult c = lindelof_from_paracompact(lom, pairs, L(open_iv(-2, 2)));
  t.check(c.outcome == Outcome::Done, "chain outcome " + outcome_name(c.outcome) + ": " + c.detail);
  t.check(c.prefix.size() >= 4, "chain prefix too short");
  for (std::size_t n = 0; n < c.prefix.size(); ++n) {
    long r = static_cast<long>(n) + 1;
    t.check(c.prefix[n].set == PeriodicSet::open_interval(-r, r), "M_" + std::to_string(n) + " = " + to_string(c.prefix[n].set));
  }
  t.check(c.cover && verify_lindelof_witness(lom, *c.cover).holds, "chain cover does not verify");

  Family chain = Family::chain({open_iv(-2, 2), 1, 0, 1});
  // oracle: the chain members are (-n-1, n+1)
  for (int j = 0; j < 5; ++j) t.check(chain.chain_atoms()[0].member(j) == PeriodicSet::open_interval(-j - 1, j + 1), "chain member");
  RefinementResult r = paracompact_from_lindelof(lom, chain);
  t.check(r.outcome == Outcome::Done, "refinement outcome " + outcome_name(r.outcome) + ": " + r.detail);
  t.check(r.cover && verify_paracompact_witness(lom, *r.cover).holds, "refined cover does not verify");
  std::vector<PeriodicSet> members;
  if (r.cover)
    for (const auto& m : r.cover->sample_members(16)) members.push_back(m.set);
  int found = 0;
  for (long n = 1; n + 1 < static_cast<long>(r.pieces.size()); ++n) {
    PeriodicSet w = subtract(PeriodicSet::open_interval(-n - 2, n + 2), PeriodicSet::from_interval(QInterval::closed(-n, n)));
    t.check(r.pieces[n + 1].set == w, "W_" + std::to_string(n + 2) + " = " + to_string(r.pieces[n + 1].set));
    // the cover lists W_{n+2} whole or as its two components
    PeriodicSet right = intersect(w, PeriodicSet::ray_above(0)), left = intersect(w, PeriodicSet::ray_below(0));
    auto listed = [&](const PeriodicSet& p) { return std::find(members.begin(), members.end(), p) != members.end(); };
    bool in = listed(w) || (listed(right) && listed(left));
    t.check(in, "W_" + std::to_string(n + 2) + " not presented by the cover");
    found += in;
  }
  return summarize(t, "M_n = (-n-1,n+1) for n < " + std::to_string(c.prefix.size()) + ", W_{n+2} checked for n = 1.." +
                        std::to_string(found));
}

Result c9_functors() {
  Tally t;
  Rng rng(909);
  for (const auto& r : kRows) {
    Space x = Space::builtin(r.id);
    t.check(same_smops(sm(sm(x)), sm(x)) && same_smops(pt(pt(x)), pt(x)), x.name() + " idempotence");
    Space p = pt(x);
    t.check(p.derived_shape(Derived::Open) == x.derived_shape(Derived::WeaklyOpen), x.name() + " (Lswo)^o shape");
    for (int i = 0; i < 100; ++i) {
      SetValue s = L(random_line_set(rng, i));
      t.check(p.is_open_set(s) == x.is_weakly_open(s), x.name() + " (Lswo)^o on " + to_string(s.set));
      // weakly open on the whole line means open in the order topology
      t.check(x.is_weakly_open(s) == open_in_line(s.set), x.name() + " Lwo oracle on " + to_string(s.set));
    }
  }
  struct Pair {
    BuiltinLine from, to;
  };
  for (const Pair& q : {Pair{BuiltinLine::om, BuiltinLine::st}, Pair{BuiltinLine::lpom, BuiltinLine::lpst},
                        Pair{BuiltinLine::lom, BuiltinLine::lom}}) {
    Space p = pt(Space::builtin(q.from)), y = Space::builtin(q.to);
    for (int i = 0; i < 500; ++i) {
      SetValue s = L(i % 3 == 0 ? random_bounded_open(rng) : random_line_set(rng, i));
      bool a = p.is_smop(s);
      t.check(a == y.is_smop(s) && a == oracle_smop(q.to, s.set),
              "pt(" + builtin_name(q.from) + ") vs " + builtin_name(q.to) + " on " + to_string(s.set));
    }
  }
  int pt_instances = 0;
  for (int i = 0; i < 500; ++i) {
    FSpace f = random_fspace(rng, 5);
    Space x = build(f);
    t.check(same_smops(sm(sm(x)), sm(x)) && same_smops(pt(pt(x)), pt(x)), "finite idempotence " + show(f.smops));
    Sets lwo = unions(f.smops);
    Sets lswo;
    Sets ls = down(f.smops, f.carrier);
    std::set_intersection(lwo.begin(), lwo.end(), ls.begin(), ls.end(), std::back_inserter(lswo));
    t.check(pt(x).family(Derived::Open).sets() == compat(lswo, f.carrier) && compat(lswo, f.carrier) == lwo,
            "finite (Lswo)^o on " + show(f.smops));
    if (pt_instances < 200) {
      Space p = pt(x);
      BornUniverse u = ubor(p);
      // the topology is all unions of smops, the bornology all subsets of smops
      t.check(u.topology.sets() == unions(p.smops().sets()) && u.bornology.sets() == down(p.smops().sets(), f.carrier),
              "ubor oracle on " + show(f.smops));
      t.check(same_smops(lss(u), p) && ubor(lss(u)) == u, "lss/ubor on " + show(f.smops));
      ++pt_instances;
    }
  }
  return summarize(t, "9 builtins, 3 pt equivalences x 500 sets, " + std::to_string(pt_instances) + " lss/ubor instances");
}

// ---- class-rule soundness

/// Pool of witness smops: random intervals, rays, small neighbourhoods and
/// unions, plus targeted ones around the boundary of s. Filtered to smops.
std::vector<PeriodicSet> witness_pool(Rng& rng, const Space& x, const PeriodicSet& s, std::size_t want) {
  std::vector<PeriodicSet> raw{x.carrier()};
  QInterval window = s.hull_with_periods(2);
  IntervalList parts = s.materialize(window);
  for (const auto& p : parts.parts())
    for (const auto* e : {&p.lo(), &p.hi()}) {
      if (e->infinite) continue;
      for (long d : {2L, 64L}) raw.push_back(PeriodicSet::open_interval(e->value - make_rational(1, d), e->value + make_rational(1, d)));
      raw.push_back(PeriodicSet::ray_above(e->value - 1));
      raw.push_back(PeriodicSet::ray_below(e->value + 1));
    }
  if (auto lo = s.infimum(), hi = s.supremum(); lo && hi) raw.push_back(PeriodicSet::open_interval(*lo - 1, *hi + 1));
  std::vector<PeriodicSet> out;
  for (auto& r : raw)
    if (x.is_smop(L(r))) out.push_back(r);
  std::uniform_int_distribution<long> grid(-48, 48);
  while (out.size() < want) {
    PeriodicSet c;
    switch (rng() % 6) {
      case 0: c = PeriodicSet::ray_above(make_rational(grid(rng), 4)); break;
      case 1: c = PeriodicSet::ray_below(make_rational(grid(rng), 4)); break;
      case 2: {
        Rational m = make_rational(grid(rng), 4), r = make_rational(1, 1L << (1 + rng() % 8));
        c = PeriodicSet::open_interval(m - r, m + r);
        break;
      }
      case 3: c = unite(random_bounded_open(rng), random_bounded_open(rng)); break;
      case 4: c = interior(test::random_periodic(rng)); break;
      default: {
        long a = grid(rng), b = grid(rng);
        if (a == b) continue;
        c = PeriodicSet::open_interval(make_rational(std::min(a, b), 4), make_rational(std::max(a, b), 4));
      }
    }
    if (x.is_smop(L(c))) out.push_back(c);
  }
  return out;
}

/// Points deciding membership questions about s: finite endpoints in s,
/// midpoints, and grid points of s.
std::vector<Rational> probe_points(Rng& rng, const PeriodicSet& s) {
  std::vector<Rational> pts;
  QInterval window = s.hull_with_periods(2);
  IntervalList parts = s.materialize(window);
  for (const auto& p : parts.parts()) {
    if (!p.lo().infinite && p.lo().closed) pts.push_back(p.lo().value);
    if (!p.hi().infinite && p.hi().closed) pts.push_back(p.hi().value);
    if (!p.lo().infinite && !p.hi().infinite) pts.push_back((p.lo().value + p.hi().value) / 2);
  }
  for (int i = 0; i < 12; ++i) {
    Rational q = make_rational(static_cast<long>(rng() % 97) - 48, 8);
    if (s.contains(q)) pts.push_back(q);
  }
  return pts;
}

/// Essentially finite on w, for a family of bounded list members and translate
/// atoms with bounded bases: finitely many members meet w.
bool direct_ef_on(const Family& f, const PeriodicSet& w) {
  for (const auto& a : f.translate_atoms()) {
    if (!a.infinite()) continue;
    // members with large |k| recur with the period of w's tails; a run of 64 decides
    auto meets_far = [&](long sign) {
      Rational reach = abs(w.window_lo()) + abs(w.window_hi()) + 8;
      Rational ratio = reach / a.step;
      Integer k0 = Integer(ratio.get_num() / ratio.get_den()) + 5;
      for (long j = 0; j < 64; ++j) {
        Integer k = sign * (k0 + j);
        if ((sign > 0 && a.last) || (sign < 0 && a.first)) return false;
        if (intersects(a.member(k), w)) return true;
      }
      return false;
    };
    if (meets_far(1) || meets_far(-1)) return false;
  }
  return true;
}

Family random_family(Rng& rng) {
  PeriodicSet base = random_bounded_open(rng);
  Rational step = make_rational(1 + static_cast<long>(rng() % 4), 2);
  std::optional<Integer> first, last;
  switch (rng() % 4) {
    case 0: break;
    case 1: first = Integer(0); break;
    case 2: last = Integer(0); break;
    default: first = Integer(-2), last = Integer(3);
  }
  Family t = Family::translates({base, step, first, last, std::nullopt});
  if (rng() % 2) return t;
  return Family::union_of({t, Family::list({L(random_bounded_open(rng))})});
}

Result c10_class_rules() {
  Tally t;
  Rng rng(1010);
  std::map<std::string, long> witnesses, positive;
  for (const auto& r : kRows) {
    Space x = Space::builtin(r.id);
    for (int i = 0; i < 12; ++i) {
      PeriodicSet s = random_line_set(rng, i);
      std::vector<PeriodicSet> pool = witness_pool(rng, x, s, 500);
      const std::string label = x.name() + " on " + to_string(s);

      bool open_direct = true;
      for (const auto& w : pool) open_direct = open_direct && x.is_smop(L(intersect(s, w)));
      t.check(x.is_open_set(L(s)) == open_direct, "open rule, " + label);
      positive["open"] += open_direct;
      witnesses["open"] += static_cast<long>(pool.size());

      bool small_direct = false;
      for (const auto& w : pool) small_direct = small_direct || is_subset(s, w);
      t.check(x.is_small_set(L(s)) == small_direct, "small rule, " + label);
      positive["small"] += small_direct;
      witnesses["small"] += static_cast<long>(pool.size());

      bool wo_direct = true;
      for (const Rational& p : probe_points(rng, s)) {
        if (!s.contains(p)) continue;
        bool nb = false;
        for (const auto& w : pool) nb = nb || (w.contains(p) && is_subset(w, s));
        for (long d = 2; !nb && d <= 4096; d *= 2) {
          PeriodicSet w = PeriodicSet::open_interval(p - make_rational(1, d), p + make_rational(1, d));
          nb = x.is_smop(L(w)) && is_subset(w, s);
        }
        wo_direct = wo_direct && nb;
      }
      t.check(x.is_weakly_open(L(s)) == wo_direct, "weakly open rule, " + label);
      positive["weakly-open"] += wo_direct;
      witnesses["weakly-open"] += static_cast<long>(pool.size());

      Family f = random_family(rng);
      FamilyReport rep = classify_family(x, f);
      bool ef_everywhere = true;
      for (const auto& w : pool) ef_everywhere = ef_everywhere && direct_ef_on(f, w);
      t.check(rep.admissible == ef_everywhere, "admissibility rule, " + to_string(f) + " in " + x.name());
      positive["admissible"] += ef_everywhere;
      t.check(rep.locally_finite == ef_everywhere, "local finiteness rule, " + to_string(f) + " in " + x.name());
      witnesses["admissible"] += static_cast<long>(pool.size());
    }
  }
  std::string summary;
  for (const auto& [rule, n] : witnesses)
    summary += (summary.empty() ? "" : ", ") + rule + " " + std::to_string(n) + " (" + std::to_string(positive[rule]) +
               "/108 sets in the class)";
  return summarize(t, "witness smops per rule: " + summary);
}

Result c11_dsl() {
  Tally t;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(LOCUS_CORPUS_DIR))
    if (e.path().extension() == ".locus") files.push_back(e.path());
  t.check(files.size() >= 30, "corpus has " + std::to_string(files.size()) + " documents");
  for (const auto& p : files) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    std::string text = os.str();
    dsl::Document d = dsl::parse(text);
    std::string printed = dsl::print(d);
    t.check(printed == text && dsl::parse(printed) == d && dsl::print(dsl::parse(printed)) == printed,
            "round trip " + p.filename().string());
  }
  dsl::Document suites = dsl::parse("random-suite --backend finite --iters 300 --seed 7\n"
                                    "random-suite --backend interval --iters 100 --seed 7\n");
  std::string a = dsl::to_json(dsl::run(suites), false).dump();
  std::string b = dsl::to_json(dsl::run(suites), false).dump();
  t.check(a == b, "random-suite reports differ between runs");
  t.check(dsl::run(suites).exit_code() == 0, "random-suite reports a failure");
  return summarize(t, std::to_string(files.size()) + " documents, deterministic suites");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"compatibility lemma", c1_compatibility},
      {"decomposition", c2_decomposition},
      {"smallness equivalence", c3_smallness},
      {"unit interval example", c4_example},
      {"map example and bcsc", c5_maps},
      {"gluing", c6_glue},
      {"gts round trip", c7_gts},
      {"constructive theorems", c8_constructive},
      {"functor suite", c9_functors},
      {"class-rule soundness", c10_class_rules},
      {"dsl round trip and determinism", c11_dsl},
  };
  int failed = 0, n = 0;
  for (const auto& [name, body] : criteria) {
    ++n;
    auto start = std::chrono::steady_clock::now();
    Result o{false, ""};
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed ? 1 : 0;
}
