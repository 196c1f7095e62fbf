#include <random>

#include "doctest.h"
#include "locus/glue.hpp"
#include "test_support.hpp"

using namespace locus;
using namespace locus::test;

namespace {

Space discrete(int n, Mask carrier, std::string name) {
  return Space::finite(FiniteUniverse(n), carrier, FFamily::powerset(FiniteUniverse(n), carrier), std::move(name));
}

/// Charts are subspaces of one space on some of its open sets, so (⋆) holds
/// and the glued space must be the subspace on the union of the charts.
std::vector<Space> random_atlas(std::mt19937_64& rng, Space& whole) {
  std::uniform_int_distribution<int> n_pick(2, 5);
  int n = n_pick(rng);
  whole = random_finite_space(rng, n);
  FFamily open = whole.family(Derived::Open);
  std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
  std::uniform_int_distribution<int> count(1, 4);
  std::vector<Space> charts;
  for (int i = count(rng); i > 0; --i) {
    Mask c = open.sets()[pick(rng)];
    charts.push_back(whole.subspace(F(c), format_mask(c)));
  }
  return charts;
}

Space lom_chart() {
  return Space::builtin(BuiltinLine::st).subspace(L(PeriodicSet::open_interval(-1, 1)), "(-1,1)");
}

}  // namespace

TEST_CASE("star condition on finite atlases") {
  FiniteUniverse u(3);
  Space a = discrete(3, m({1, 2}), "A");
  Space b = discrete(3, m({2, 3}), "B");
  CHECK_FALSE(check_star({a, b}));
  CHECK_FALSE(check_star(std::vector<Space>{a}));

  Space c = Space::finite(u, m({1, 2}), fam(3, {0, m({1}), m({1, 2})}), "C");
  auto v = check_star({c, b});
  REQUIRE(v);
  CHECK(v->clause == "overlap-open");
  CHECK(v->detail.find("{2}") != std::string::npos);
  CHECK(v->detail.find("chart 1") != std::string::npos);
  CHECK_THROWS_AS(glue({c, b}), Error);

  // Overlap open in both, but the traces disagree.
  Space d = Space::finite(u, m({1, 2}), fam(3, {0, m({1}), m({2}), m({1, 2})}), "D");
  Space e = Space::finite(u, m({1, 2, 3}), fam(3, {0, m({1, 2}), m({3}), m({1, 2, 3})}), "E");
  auto w = check_star({d, e});
  REQUIRE(w);
  CHECK(w->clause == "trace-equal");
}

TEST_CASE("gluing finite atlases") {
  GlueResult r = glue({discrete(3, m({1, 2}), "A"), discrete(3, m({2, 3}), "B")});
  CHECK(r.space.smops() == FFamily::powerset(FiniteUniverse(3), m({1, 2, 3})));
  CHECK(r.ring_is_finite_unions);
  CHECK(r.charts_open_subspaces);
  CHECK(r.charts_admissible);

  Space one = Space::finite(FiniteUniverse(3), m({1, 2, 3}), fam(3, {0, m({1}), m({1, 2}), m({1, 2, 3})}), "F1");
  GlueResult single = glue(std::vector<Space>{one});
  CHECK(single.space.smops() == one.smops());
  CHECK(single.space.carrier_mask() == one.carrier_mask());
}

TEST_CASE("canonical self union") {
  Space f1 = Space::finite(FiniteUniverse(3), m({1, 2, 3}), fam(3, {0, m({1}), m({1, 2}), m({1, 2, 3})}), "F1");
  CHECK(canonical_self_union(f1));
  CHECK(canonical_self_union(discrete(2, m({1, 2}), "D2")));
  CHECK(canonical_self_union(Space::finite(FiniteUniverse(3), m({1, 2, 3}), fam(3, {0, m({1, 2, 3})}), "I")));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) CHECK(canonical_self_union(random_finite_space(rng, 4)));
}

TEST_CASE("random star-compatible atlases satisfy the gluing clauses") {
  std::mt19937_64 rng(5);
  Space whole = Space::finite(FiniteUniverse(1), fam(1, {0, m({1})}));
  for (int it = 0; it < 300; ++it) {
    std::vector<Space> charts = random_atlas(rng, whole);
    REQUIRE_FALSE(check_star(charts));
    GlueResult r = glue(charts);
    CHECK(r.ring_is_finite_unions);
    CHECK(r.charts_open_subspaces);
    CHECK(r.charts_admissible);
    Mask carrier = 0;
    for (const auto& c : charts) carrier |= c.carrier_mask();
    Space expected = whole.subspace(F(carrier));
    CHECK(r.space.smops() == expected.smops());

    // Idempotence.
    GlueResult again = glue(std::vector<Space>{r.space});
    CHECK(again.space.smops() == r.space.smops());
  }
}

TEST_CASE("periodic atlas of (-1,1) reproduces lom") {
  PeriodicAtlas atlas{lom_chart(), 1};
  CHECK(overlap_reach(atlas) == 3);
  CHECK_FALSE(check_star(atlas));
  GlueResult r = glue(atlas, "glued-lom");
  CHECK(r.ring_is_finite_unions);
  CHECK(r.charts_open_subspaces);
  CHECK(r.charts_admissible);
  CHECK(r.space.carrier().is_line());

  Space lom = Space::builtin(BuiltinLine::lom);
  CHECK(r.space.is_smop(L(PeriodicSet::open_interval(-5, 7))));
  CHECK_FALSE(r.space.is_smop(L(PeriodicSet::ray_above(0))));
  CHECK_FALSE(r.space.is_smop(L(ps({oc(0, 1)}))));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    SetValue s = L(i % 2 ? random_open(rng) : random_periodic(rng));
    CHECK(r.space.is_smop(s) == lom.is_smop(s));
  }
}

TEST_CASE("periodic atlas violations") {
  Space closed = Space::builtin(BuiltinLine::st).subspace(L(ps({cc(0, 1)})), "[0,1]");
  auto v = check_star(PeriodicAtlas{closed, 1});
  REQUIRE(v);
  CHECK(v->clause == "overlap-open");
  CHECK_THROWS_AS(glue(PeriodicAtlas{closed, 1}), Error);

  // Disjoint half-open charts satisfy (⋆) but are not open in their union.
  Space half = Space::builtin(BuiltinLine::st).subspace(L(ps({co(0, 1)})), "[0,1)");
  CHECK_FALSE(check_star(PeriodicAtlas{half, 1}));
  CHECK_THROWS_AS(glue(PeriodicAtlas{half, 1}), Error);

  // Sparse charts: a gap between translates.
  GlueResult sparse = glue(PeriodicAtlas{lom_chart(), 3});
  CHECK(sparse.ring_is_finite_unions);
  CHECK(sparse.charts_open_subspaces);
  CHECK(sparse.charts_admissible);
  CHECK(sparse.space.is_smop(L(ps({oo(-1, 1), oo(2, 4)}))));
  CHECK_FALSE(sparse.space.is_smop(L(ps({oo(-1, 2)}))));
}
