#include <random>

#include "doctest.h"
#include "locus/maps.hpp"
#include "locus/random.hpp"
#include "test_support.hpp"

using namespace locus;
using namespace locus::test;

namespace {

Space B(BuiltinLine id) { return Space::builtin(id); }

const QInterval kBelow0({Rational(0), true, false}, {Rational(0), false, false});
const QInterval kFrom0({Rational(0), false, true}, {Rational(0), true, false});

MapCheckOptions fast() { return {100, 7}; }

/// Independent preimage check for a table map: enumerates points directly.
bool table_preimages_in(const SpaceMap& f, const FFamily& targets, const FFamily& allowed) {
  const auto& t = f.table()->image;
  for (Mask u : targets.sets()) {
    Mask pre = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= 0 && ((u >> t[i]) & 1U)) pre |= Mask{1} << i;
    if (!allowed.contains(pre)) return false;
  }
  return true;
}

bool table_images_small(const SpaceMap& f) {
  const auto& t = f.table()->image;
  for (Mask l : f.source().smops().sets()) {
    Mask img = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= 0 && ((l >> i) & 1U)) img |= Mask{1} << t[i];
    bool inside = false;
    for (Mask v : f.target().smops().sets()) inside = inside || (img & ~v) == 0;
    if (!inside) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identity om to lom: continuous, not bounded") {
  SpaceMap f = SpaceMap::identity(B(BuiltinLine::om), B(BuiltinLine::lom));
  ClassificationReport r = classify_map(f, fast());
  CHECK(r.continuous.holds);
  CHECK(r.weakly_continuous.holds);
  CHECK_FALSE(r.bounded.holds);
  REQUIRE(r.bounded.witness);
  CHECK(r.bounded.witness->set == PeriodicSet::ray_below(0));
  CHECK_FALSE(r.bounded_continuous.holds);
  CHECK_FALSE(r.strictly_continuous.holds);
  CHECK_FALSE(check_bc_characterization(f, fast()).bc);
  CHECK_FALSE(check_bc_characterization(f, fast()).images_of_small.holds);
}

TEST_CASE("identity lom to om: bounded continuous") {
  SpaceMap f = SpaceMap::identity(B(BuiltinLine::lom), B(BuiltinLine::om));
  ClassificationReport r = classify_map(f, fast());
  CHECK(r.continuous.holds);
  CHECK(r.bounded.holds);
  CHECK(r.bounded_continuous.holds);
  CHECK(r.strictly_continuous.holds);
  CHECK(check_bc_characterization(f, fast()).bc);
}

TEST_CASE("identity on every builtin") {
  for (int i = 0; i < 9; ++i) {
    Space x = B(static_cast<BuiltinLine>(i));
    ClassificationReport r = classify_map(SpaceMap::identity(x, x), fast());
    CHECK_MESSAGE(r.weakly_continuous.holds, x.name());
    CHECK_MESSAGE(r.bounded.holds, x.name());
    CHECK_MESSAGE(r.continuous.holds, x.name());
    CHECK_MESSAGE(r.strictly_continuous.holds, x.name());
  }
}

TEST_CASE("negation on l+om is not bounded") {
  Space x = B(BuiltinLine::lpom);
  SpaceMap f = SpaceMap::piecewise(x, x, PiecewiseAffine::affine(-1, 0), "neg");
  MapVerdict b = bounded(f, fast());
  CHECK_FALSE(b.holds);
  REQUIRE(b.witness);
  CHECK(b.witness->set == PeriodicSet::ray_below(0));
  CHECK(f.image(*b.witness).set == PeriodicSet::ray_above(0));
}

TEST_CASE("constant maps satisfy (bc)") {
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      SpaceMap f = SpaceMap::constant(B(static_cast<BuiltinLine>(i)), B(static_cast<BuiltinLine>(j)),
                                      SetValue::line(PeriodicSet::point(q(3, 2))));
      CHECK(check_bc_characterization(f, {40, 3}).bc);
    }
  Space f1 = Space::finite(FiniteUniverse(3), fam(3, {0, m({1}), m({1, 2}), m({1, 2, 3})}), "F1");
  CHECK(check_bc_characterization(SpaceMap::constant(f1, f1, SetValue::finite(m({3})))).bc);
}

TEST_CASE("jumps break continuity") {
  Space x = B(BuiltinLine::lom);
  SpaceMap f = SpaceMap::piecewise(x, x, PiecewiseAffine({{kBelow0, 1, 0}, {kFrom0, 1, 1}}), "jump");
  ClassificationReport r = classify_map(f, fast());
  CHECK_FALSE(r.weakly_continuous.holds);
  CHECK_FALSE(r.continuous.holds);
  CHECK(r.bounded.holds);
  CHECK_FALSE(r.strictly_continuous.holds);
  REQUIRE(r.continuous.witness);
  CHECK(f.preimage(*r.continuous.witness).set == PeriodicSet::from_interval(co(0, q(1, 2))));

  // A jump onto a point outside the carrier's closure from that side is harmless.
  Space y = Space::line(PeriodicSet::from_list(list({oc(-2, -1), cc(0, 1)})), {}, "gap");
  SpaceMap g = SpaceMap::piecewise(y, B(BuiltinLine::st), PiecewiseAffine({{kBelow0, 0, 5}, {kFrom0, 1, 0}}), "g");
  CHECK(weakly_continuous(g, fast()).holds);
}

TEST_CASE("maps and constructors reject bad input") {
  Space om = B(BuiltinLine::om);
  CHECK_THROWS_AS(PiecewiseAffine({{cc(0, 1), 1, 0}, {cc(1, 2), 1, 0}}), Error);
  CHECK_THROWS_AS(SpaceMap::piecewise(om, om, PiecewiseAffine({{kBelow0, 1, 0}})), Error);
  Space half = Space::line(PeriodicSet::ray_above(0), {}, "half");
  CHECK_THROWS_AS(SpaceMap::piecewise(om, half, PiecewiseAffine::affine(1, 0)), Error);
  CHECK_NOTHROW(SpaceMap::piecewise(half, om, PiecewiseAffine::affine(1, 0)));
  Space f1 = Space::finite(FiniteUniverse(3), fam(3, {0, m({1}), m({1, 2, 3})}), "F");
  CHECK_THROWS_AS(SpaceMap::finite(f1, f1, FiniteTable{{0, 5, 0}}), Error);
  CHECK_THROWS_AS(SpaceMap::finite(f1, f1, FiniteTable{{0}}), Error);
}

TEST_CASE("strict continuity on given families") {
  Space lom = B(BuiltinLine::lom), om = B(BuiltinLine::om);
  Family units = Family::translates({PeriodicSet::open_interval(0, 1), 1, std::nullopt, std::nullopt, std::nullopt});
  Family pairs = Family::translates({PeriodicSet::open_interval(-1, 1), 1, std::nullopt, std::nullopt, std::nullopt});
  CHECK(check_strict_continuity(SpaceMap::identity(lom, lom), {pairs}).holds);
  CHECK_FALSE(check_strict_continuity(SpaceMap::identity(om, lom), {units}).holds);
  CHECK_THROWS_AS(check_strict_continuity(SpaceMap::identity(lom, om), {units}), Error);
  Family finite = Family::list({SetValue::line(PeriodicSet::open_interval(0, 3)), SetValue::line(PeriodicSet::line())});
  CHECK(check_strict_continuity(SpaceMap::identity(lom, om), {finite}).holds);

  // Dilation: preimages of translates are translates with a rescaled step.
  SpaceMap dil = SpaceMap::piecewise(lom, lom, PiecewiseAffine::affine(-2, 1), "dil");
  CHECK(check_strict_continuity(dil, {pairs, units}).holds);
}

TEST_CASE("catalog: consistency of the classes") {
  std::vector<SpaceMap> cat = map_catalog();
  CHECK(cat.size() >= 20);
  int strict = 0;
  for (const auto& f : cat) {
    ClassificationReport r = classify_map(f, fast());
    CHECK_MESSAGE(r.strictly_continuous.holds == (r.bounded.holds && r.continuous.holds), to_string(f));
    if (r.continuous.holds) CHECK_MESSAGE(r.weakly_continuous.holds, to_string(f));
    BcReport bc = check_bc_characterization(f, fast());
    CHECK(bc.bc == bc.bounded_continuous);
    strict += r.strictly_continuous.holds;
  }
  CHECK(strict > 0);
  CHECK(strict < static_cast<int>(cat.size()));
}

TEST_CASE("small spaces: continuity is preimages of smops") {
  using BL = BuiltinLine;
  for (BL a : {BL::om, BL::rom, BL::st, BL::slom})
    for (BL b : {BL::om, BL::rom, BL::st, BL::slom})
      for (Rational c : std::vector<Rational>{1, -1, q(1, 3), 0}) {
        SpaceMap f = SpaceMap::piecewise(B(a), B(b), PiecewiseAffine::affine(c, 1));
        ClassificationReport r = classify_map(f, {60, 5});
        bool pre = preimages_are_smops(f, {60, 5}).holds;
        CHECK_MESSAGE(r.continuous.holds == pre, to_string(f));
        CHECK_MESSAGE(r.bounded_continuous.holds == r.continuous.holds, to_string(f));
      }
}

TEST_CASE("composition keeps bounded continuity") {
  std::vector<SpaceMap> cat;
  for (auto& f : map_catalog())
    if (classify_map(f, {30, 2}).bounded_continuous.holds) cat.push_back(f);
  int composed = 0;
  for (const auto& f : cat)
    for (const auto& g : cat) {
      if (f.backend() != g.backend()) continue;
      if (f.backend() == Backend::Interval && !(f.target().carrier() == g.source().carrier())) continue;
      if (f.backend() == Backend::Finite && f.target().carrier_mask() != g.source().carrier_mask()) continue;
      if (!(f.target().name() == g.source().name())) continue;
      SpaceMap h = compose(g, f);
      CHECK_MESSAGE(classify_map(h, {30, 2}).bounded_continuous.holds, to_string(h));
      ++composed;
    }
  CHECK(composed > 10);
}

TEST_CASE("composition is pointwise") {
  Space st = B(BuiltinLine::st);
  SpaceMap f = SpaceMap::piecewise(st, st, PiecewiseAffine({{kBelow0, -1, 0}, {kFrom0, 2, 0}}), "f");
  SpaceMap g = SpaceMap::piecewise(st, st, PiecewiseAffine({{QInterval({1, true, false}, {1, false, true}), 0, 1},
                                                            {QInterval({1, false, false}, {1, true, false}), 3, -2}}),
                                   "g");
  SpaceMap h = compose(g, f);
  for (long n = -12; n <= 12; ++n) {
    Rational x = q(n, 4);
    Rational fx = f.rule()->piece_at(x)->at(x);
    CHECK(h.rule()->piece_at(x)->at(x) == g.rule()->piece_at(fx)->at(fx));
  }
}

TEST_CASE("random finite maps: strict continuity is bounded continuity") {
  gen::Rng rng(2024);
  int strict = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 2 + static_cast<int>(rng() % 3);
    SpaceMap f = gen::finite_map(rng, n);
    ClassificationReport r = classify_map(f);
    CHECK(r.strictly_continuous.holds == r.bounded_continuous.holds);
    CHECK(r.continuous.holds == table_preimages_in(f, f.target().smops(), f.source().family(Derived::Open)));
    CHECK(r.bounded.holds == table_images_small(f));
    if (r.continuous.holds) CHECK(r.weakly_continuous.holds);
    strict += r.strictly_continuous.holds;
  }
  CHECK(strict > 0);
}

TEST_CASE("printing") {
  SpaceMap f = SpaceMap::piecewise(B(BuiltinLine::lpom), B(BuiltinLine::lom),
                                   PiecewiseAffine({{kFrom0, 2, 0}, {kBelow0, -1, 0}}), "f");
  CHECK(to_string(f) == "map piecewise { on (-inf,0): x -> -x; on [0,inf): x -> 2x } from l+om to lom");
  CHECK(to_string(PiecewiseAffine::affine(q(1, 2), -3)) == "piecewise { on (-inf,inf): x -> 1/2x-3 }");
}
