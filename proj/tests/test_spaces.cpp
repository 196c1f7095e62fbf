#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace locus;
using namespace locus::test;

namespace {

Space B(BuiltinLine id) { return Space::builtin(id); }

const PeriodicSet kHalves = right_translates(list({oo(0, q(1, 2))}), 1);
const PeriodicSet kUnits = right_translates(list({oo(0, 1)}), 1);
const PeriodicSet kNotIntegers = all_translates(list({oo(0, 1)}), 1);

/// Smops used to probe openness directly: S is open iff S ∩ L is a smop for
/// every smop L; these catch every failure mode of the shape rules.
std::vector<PeriodicSet> probe_smops(const Space& x, std::mt19937_64& rng) {
  const PeriodicSet& y = x.carrier();
  std::vector<PeriodicSet> out{y};
  for (long n = -12; n <= 12; n += 3) {
    Rational c = q(n, 2);
    out.push_back(intersect(y, PeriodicSet::open_interval(c - q(1, 4), c + q(1, 4))));
    out.push_back(intersect(y, PeriodicSet::open_interval(c - 2, c + 2)));
    out.push_back(intersect(y, PeriodicSet::ray_above(c)));
    out.push_back(intersect(y, PeriodicSet::ray_below(c)));
  }
  for (int i = 0; i < 10; ++i) out.push_back(intersect(y, random_open(rng)));
  std::vector<PeriodicSet> smops;
  for (auto& s : out)
    if (x.is_smop(L(s))) smops.push_back(s);
  return smops;
}

}  // namespace

TEST_CASE("builtin smops") {
  CHECK(B(BuiltinLine::lom).is_smop(L(ps({oo(0, 1), oo(5, 6)}))));
  CHECK_FALSE(B(BuiltinLine::om).is_smop(L(kUnits)));
  CHECK(B(BuiltinLine::slpom).is_smop(L(kHalves)));
  CHECK_FALSE(B(BuiltinLine::slpom).is_smop(L(affine_image(kHalves, -1, 0))));
  CHECK(B(BuiltinLine::om).is_smop(L(PeriodicSet::ray_above(0))));
  CHECK_FALSE(B(BuiltinLine::lpom).is_smop(L(PeriodicSet::ray_above(0))));
  CHECK(B(BuiltinLine::lpom).is_smop(L(PeriodicSet::ray_below(0))));
  CHECK_FALSE(B(BuiltinLine::st).is_smop(L(ps({cc(0, 1)}))));
}

TEST_CASE("open, small, weakly open, closure") {
  CHECK(B(BuiltinLine::lom).is_open_set(L(kUnits)));
  CHECK_FALSE(B(BuiltinLine::lom).is_smop(L(kUnits)));
  CHECK_FALSE(B(BuiltinLine::om).is_open_set(L(kNotIntegers)));
  CHECK(B(BuiltinLine::om).is_weakly_open(L(kNotIntegers)));
  for (auto id : all_builtins()) CHECK(B(id).is_open_set(L(PeriodicSet())));
  CHECK(B(BuiltinLine::lom).is_small_set(L(ps({oo(0, 1), oo(2, 3)}))));
  CHECK_FALSE(B(BuiltinLine::lom).is_small_set(L(kUnits)));
  CHECK(B(BuiltinLine::lom).wcl(L(ps({oo(0, 1)}))) == L(ps({cc(0, 1)})));
  CHECK(B(BuiltinLine::om).is_closed_set(L(ps({cc(0, 1)}))));
  CHECK_THROWS_AS(B(BuiltinLine::om).is_smop(F(1)), Error);
}

TEST_CASE("subspaces") {
  Space f1 = Space::finite(FiniteUniverse(3), fam(3, {0, m({1}), m({1, 2}), m({1, 2, 3})}), "F1");
  Space y = f1.subspace(F(m({2, 3})));
  CHECK(y.smops() == fam(3, {0, m({2}), m({2, 3})}));
  CHECK(f1.subspace(F(m({1, 2, 3}))).smops() == f1.smops());
  Space pos = B(BuiltinLine::lom).subspace(L(PeriodicSet::ray_above(0)));
  CHECK(pos.is_smop(L(ps({oo(1, 2)}))));
  CHECK(pos.is_smop(L(ps({oo(0, 1)}))));
  // relatively open only
  Space cl = B(BuiltinLine::om).subspace(L(ps({cc(0, 2)})));
  CHECK(cl.is_smop(L(ps({co(0, 1)}))));
  CHECK_FALSE(cl.is_smop(L(ps({cc(0, 1)}))));
  CHECK(classify_space(cl).is_small);
  Space empty = B(BuiltinLine::om).subspace(L(PeriodicSet()));
  CHECK(empty.is_smop(L(PeriodicSet())));
  CHECK(classify_space(empty).compact == Verdict::True);
}

TEST_CASE("space classification table") {
  struct Row {
    BuiltinLine id;
    bool small, pt, tl;
  };
  for (Row r : {Row{BuiltinLine::om, true, false, false}, Row{BuiltinLine::rom, true, false, false},
                Row{BuiltinLine::st, true, true, true}, Row{BuiltinLine::slom, true, true, true},
                Row{BuiltinLine::lom, false, true, false}, Row{BuiltinLine::lst, false, true, false},
                Row{BuiltinLine::lpom, false, false, false}, Row{BuiltinLine::lpst, false, true, false},
                Row{BuiltinLine::slpom, false, true, false}}) {
    CAPTURE(builtin_name(r.id));
    SpaceFlags f = classify_space(B(r.id));
    CHECK(f.is_small == r.small);
    CHECK(f.is_partially_topological == r.pt);
    CHECK(f.is_topological_like == r.tl);
    CHECK(f.compact == Verdict::Refuted);
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    SpaceFlags f = classify_space(random_finite_space(rng, 1 + i % 4));
    CHECK(f.compact == Verdict::True);
  }
  SpaceFlags bounded = classify_space(B(BuiltinLine::om).subspace(L(ps({oo(0, 1)}))));
  CHECK(bounded.compact == Verdict::Refuted);
  SpaceFlags closed = classify_space(B(BuiltinLine::om).subspace(L(ps({cc(0, 1)}))));
  CHECK(closed.compact == Verdict::Inconclusive);
}

TEST_CASE("representable coincidences") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    SetValue s = L(random_periodic(rng));
    for (Derived d : {Derived::Smop, Derived::Open, Derived::Small, Derived::WeaklyOpen, Derived::Closed}) {
      CHECK(B(BuiltinLine::st).in_family(d, s) == B(BuiltinLine::slom).in_family(d, s));
      CHECK(B(BuiltinLine::lst).in_family(d, s) == B(BuiltinLine::lom).in_family(d, s));
      CHECK(B(BuiltinLine::om).in_family(d, s) == B(BuiltinLine::rom).in_family(d, s));
    }
  }
}

TEST_CASE("derived family laws on builtin lines and their subspaces") {
  std::mt19937_64 rng(5);
  std::vector<Space> spaces;
  for (auto id : all_builtins()) {
    spaces.push_back(B(id));
    spaces.push_back(B(id).subspace(L(random_periodic(rng))));
  }
  for (const Space& x : spaces) {
    CAPTURE(x.name());
    auto probes = probe_smops(x, rng);
    Space pt = x.with_shape(x.derived_shape(Derived::SmallWeaklyOpen), "pt");
    for (int i = 0; i < 60; ++i) {
      PeriodicSet raw = i % 2 ? random_open(rng) : random_periodic(rng);
      SetValue s = L(intersect(raw, x.carrier()));
      bool smop = x.is_smop(s);
      CHECK(smop == (x.is_small_set(s) && x.is_open_set(s)));
      if (x.is_open_set(s)) CHECK(x.is_weakly_open(s));
      if (smop) CHECK(x.is_swo(s));
      CHECK(pt.is_open_set(s) == x.is_weakly_open(s));
      // direct openness oracle
      bool open_by_probe = true;
      for (const auto& l : probes)
        if (!x.is_smop(L(intersect(s.set, l)))) {
          open_by_probe = false;
          break;
        }
      CHECK(open_by_probe == x.is_open_set(s));
      // smops are closed under union and intersection
      if (smop) {
        for (int j = 0; j < 3; ++j) {
          const auto& l = probes[rng() % probes.size()];
          CHECK(x.is_smop(L(unite(s.set, l))));
          CHECK(x.is_smop(L(intersect(s.set, l))));
        }
      }
    }
  }
}

TEST_CASE("derived family laws on random finite spaces") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    Space x = random_finite_space(rng, 1 + i % 5);
    FFamily l = x.smops(), lo = x.family(Derived::Open), ls = x.family(Derived::Small);
    FFamily lwo = x.family(Derived::WeaklyOpen), lswo = x.family(Derived::SmallWeaklyOpen);
    std::vector<Mask> both;
    for (Mask s : lo.sets())
      if (ls.contains(s)) both.push_back(s);
    CHECK(FFamily(x.universe(), both) == l);
    CHECK(lwo.includes(lo));
    CHECK(lswo.includes(l));
    CHECK(x.with_smops(lswo, "pt").family(Derived::Open) == lwo);
    CHECK(lo == compatible_sets(l, x.carrier_mask()));
    CHECK(ls == generate_bornology(l));
    CHECK(lwo == generate_topology(l));
    SpaceFlags f = classify_space(x);
    CHECK(f.is_small == l.contains(x.carrier_mask()));
    CHECK(f.is_partially_topological == (l == lswo));
  }
}
