#include <random>

#include "doctest.h"
#include "locus/functors.hpp"
#include "locus/random.hpp"
#include "test_support.hpp"

using namespace locus;
using namespace locus::test;

namespace {

Space B(BuiltinLine id) { return Space::builtin(id); }

Space f1() { return Space::finite(FiniteUniverse(3), fam(3, {0, m({1}), m({1, 2}), m({1, 2, 3})}), "F1"); }

/// Oracle for finite sm/pt: recomputes L^o and L^swo from the definitions.
FFamily open_oracle(const Space& x) {
  std::vector<Mask> out;
  const Mask c = x.carrier_mask();
  for (Mask a = c;; a = (a - 1) & c) {
    bool open = true;
    for (Mask l : x.smops().sets()) open = open && x.smops().contains(a & l);
    if (open) out.push_back(a);
    if (a == 0) break;
  }
  return FFamily(x.universe(), out);
}

bool finite_small(const Space& x, Mask a) {
  for (Mask l : x.smops().sets())
    if ((a & ~l) == 0) return true;
  return false;
}

FFamily swo_oracle(const Space& x) {
  // Weakly open sets on a finite carrier are the unions of smops.
  std::vector<Mask> out;
  const Mask c = x.carrier_mask();
  for (Mask a = c;; a = (a - 1) & c) {
    Mask cover = 0;
    for (Mask l : x.smops().sets())
      if ((l & ~a) == 0) cover |= l;
    if (cover == a && finite_small(x, a)) out.push_back(a);
    if (a == 0) break;
  }
  return FFamily(x.universe(), out);
}

}  // namespace

TEST_CASE("sm on lines and finite spaces") {
  Space s = sm(B(BuiltinLine::lom));
  CHECK(classify_space(s).is_small);
  CHECK(same_smops(s, B(BuiltinLine::st)));
  CHECK(same_smops(sm(B(BuiltinLine::om)), B(BuiltinLine::om)));
  CHECK(same_smops(sm(B(BuiltinLine::st)), B(BuiltinLine::st)));
  CHECK(same_smops(sm(f1()), f1()));
  CHECK_FALSE(same_smops(B(BuiltinLine::lom), B(BuiltinLine::om)));
}

TEST_CASE("pt on lines") {
  CHECK(same_smops(pt(B(BuiltinLine::om)), B(BuiltinLine::st)));
  CHECK(same_smops(pt(B(BuiltinLine::lpom)), B(BuiltinLine::lpst)));
  CHECK(same_smops(pt(B(BuiltinLine::lom)), B(BuiltinLine::lom)));
  for (int i = 0; i < 9; ++i) {
    Space x = B(static_cast<BuiltinLine>(i));
    CHECK_MESSAGE(classify_space(pt(x)).is_partially_topological, x.name());
    CHECK_MESSAGE(same_smops(pt(pt(x)), pt(x)), x.name());
    CHECK_MESSAGE(same_smops(sm(sm(x)), sm(x)), x.name());
  }
}

TEST_CASE("finite functors against oracles") {
  std::mt19937_64 rng(91);
  gen::Rng g(91);
  for (int i = 0; i < 200; ++i) {
    Space x = gen::finite_space(g, 1 + static_cast<int>(rng() % 4));
    Space s = sm(x), p = pt(x);
    CHECK(s.smops() == open_oracle(x));
    CHECK(p.smops() == swo_oracle(x));
    CHECK(classify_space(s).is_small);
    CHECK(classify_space(p).is_partially_topological);
    CHECK(same_smops(sm(s), s));
    CHECK(same_smops(pt(p), p));
    CHECK(same_smops(sm(p), pt(s)));
  }
}

TEST_CASE("ubor and lss round trips") {
  Space lom = B(BuiltinLine::lom);
  BornUniverse u = ubor(lom);
  CHECK(u.bounded_sides == Shape{SideCond::Bounded, SideCond::Bounded});
  CHECK(same_smops(lss(u), lom));
  CHECK(ubor(lss(u)) == u);
  CHECK_THROWS_AS(ubor(B(BuiltinLine::om)), Error);

  for (int i = 0; i < 9; ++i) {
    Space x = pt(B(static_cast<BuiltinLine>(i)));
    CHECK(same_smops(lss(ubor(x)), x));
  }
  BornUniverse half = born_universe(PeriodicSet::ray_above(0), {SideCond::Finite, SideCond::Bounded});
  CHECK(ubor(lss(half)) == half);

  FiniteUniverse u3(3);
  Mask all = u3.full();
  FFamily power = union_closure(fam(3, {m({1}), m({2}), m({3})}));
  BornUniverse disc = born_universe(u3, all, power, power);
  CHECK(same_smops(lss(disc), Space::finite(u3, power)));
  CHECK(ubor(lss(disc)) == disc);

  FFamily sierpinski = fam(3, {0, m({1}), m({1, 2, 3})});
  BornUniverse whole = born_universe(u3, all, sierpinski, power);
  Space t = lss(whole);
  CHECK(classify_space(t).is_small);
  CHECK(t.smops() == sierpinski);

  CHECK_THROWS_AS(born_universe(u3, all, fam(3, {0, m({1}), m({2}), all}), power), Error);
  CHECK_THROWS_AS(born_universe(u3, all, power, fam(3, {0, m({1, 2})})), Error);
  CHECK_THROWS_AS(born_universe(u3, all, sierpinski, fam(3, {0, m({2}), m({3}), m({2, 3})})), Error);
}

TEST_CASE("finite ubor/lss on random partially topological spaces") {
  gen::Rng g(5);
  int tested = 0;
  for (int i = 0; i < 300; ++i) {
    Space x = pt(gen::finite_space(g, 1 + static_cast<int>(g() % 4)));
    BornUniverse u = ubor(x);
    CHECK(same_smops(lss(u), x));
    CHECK(ubor(lss(u)) == u);
    ++tested;
  }
  CHECK(tested == 300);
}

TEST_CASE("top_embed") {
  FiniteUniverse u2(2);
  Space s = top_embed(u2, fam(2, {0, m({1}), m({1, 2})}), "sierpinski");
  CHECK(s.smops() == fam(2, {0, m({1}), m({1, 2})}));
  CHECK(classify_space(s).is_small);
  CHECK(classify_space(s).is_partially_topological);
  FFamily disc = union_closure(fam(2, {m({1}), m({2})}));
  CHECK(top_embed(u2, disc).smops() == disc);
  CHECK_THROWS_AS(top_embed(FiniteUniverse(3), fam(3, {0, m({1, 2}), m({2, 3}), m({1, 2, 3})})), Error);

  // Continuous maps between finite topologies are exactly the morphisms.
  std::mt19937_64 rng(17);
  FiniteUniverse u3(3);
  std::vector<FFamily> tops;
  for (Mask a = 0; a < 64; ++a) {
    std::vector<Mask> gens{u3.full()};
    for (int b = 0; b < 6; ++b)
      if ((a >> b) & 1U) gens.push_back(Mask(b + 1));
    tops.push_back(union_closure(intersection_closure(FFamily(u3, gens))));
  }
  for (int i = 0; i < 200; ++i) {
    const FFamily& tx = tops[rng() % tops.size()];
    const FFamily& ty = tops[rng() % tops.size()];
    FiniteTable t{{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}};
    SpaceMap f = SpaceMap::finite(top_embed(u3, tx), top_embed(u3, ty), t);
    bool topological = true;
    for (Mask v : ty.sets()) topological = topological && tx.contains(f.preimage(SetValue::finite(v)).mask);
    CHECK(classify_map(f).bounded_continuous.holds == topological);
  }
}

TEST_CASE("universal property triangles") {
  for (const auto& f : map_catalog()) {
    TriangleReport a = sm_reflection(f, {60, 4});
    CHECK_MESSAGE(a.holds, to_string(f));
    TriangleReport b = pt_coreflection(f, {60, 4});
    CHECK_MESSAGE(b.holds, to_string(f));
  }
  gen::Rng g(33);
  for (int i = 0; i < 150; ++i) {
    SpaceMap f = gen::finite_map(g, 3);
    CHECK(sm_reflection(f).holds);
    CHECK(pt_coreflection(f).holds);
    // Maps into sm(Y) and out of pt(X) with the same table.
    SpaceMap into_small = f.between(f.source(), sm(f.target()));
    TriangleReport a = sm_reflection(into_small);
    CHECK(a.applicable);
    CHECK(a.holds);
    SpaceMap out_of_pt = f.between(pt(f.source()), f.target());
    TriangleReport b = pt_coreflection(out_of_pt);
    CHECK(b.applicable);
    CHECK(b.holds);
  }
}
