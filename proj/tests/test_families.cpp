#include <random>

#include "doctest.h"
#include "locus/families.hpp"
#include "test_support.hpp"

using namespace locus;
using namespace locus::test;

namespace {

Space B(BuiltinLine id) { return Space::builtin(id); }

Family unit_translates() {
  return Family::translates({ps({oo(0, 1)}), 1, std::nullopt, std::nullopt, std::nullopt});
}

/// Union of the members with index |k| <= K (chains: j <= K) plus the list.
PeriodicSet truncated_union(const Family& f, long K) {
  PeriodicSet u;
  for (const auto& m : f.list_members()) u = unite(u, m.set);
  for (const auto& a : f.translate_atoms()) {
    Integer lo = a.first ? std::max<Integer>(*a.first, -K) : Integer(-K);
    Integer hi = a.last ? std::min<Integer>(*a.last, K) : Integer(K);
    for (Integer k = lo; k <= hi; ++k) u = unite(u, a.member(k));
  }
  for (const auto& c : f.chain_atoms()) u = unite(u, c.member(c.growing() ? K : 0));
  return u;
}

/// Number of members with index in [-K, K] meeting L.
long members_meeting(const Family& f, const PeriodicSet& l, long K) {
  long n = 0;
  for (const auto& m : f.list_members()) n += intersects(m.set, l);
  for (const auto& a : f.translate_atoms()) {
    Integer lo = a.first ? std::max<Integer>(*a.first, -K) : Integer(-K);
    Integer hi = a.last ? std::min<Integer>(*a.last, K) : Integer(K);
    for (Integer k = lo; k <= hi; ++k) n += intersects(a.member(k), l);
  }
  for (const auto& c : f.chain_atoms())
    for (long j = 0; j <= (c.growing() ? K : 0); ++j) n += intersects(c.member(j), l);
  return n;
}

Family random_family_on(const Space& x, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 9);
  std::vector<Family> parts;
  std::vector<SetValue> listed;
  for (int i = kind(rng) % 3; i > 0; --i) {
    SetValue s = L(intersect(random_open(rng), x.carrier()));
    if (x.is_open_set(s)) listed.push_back(s);
  }
  parts.push_back(Family::list(listed));
  int atoms = kind(rng) % 3;
  for (int i = 0; i < atoms; ++i) {
    PeriodicSet base = interior(PeriodicSet::from_list(random_list(rng, 2, 1, 2)));
    Rational step = q(1 + kind(rng) % 4, 2);
    int r = kind(rng);
    if (r == 9) {
      parts.push_back(Family::chain({base, step, Integer(kind(rng) % 2), Integer(kind(rng) % 3)}));
      continue;
    }
    std::optional<Integer> first, last;
    if (r % 4 == 1) first = Integer(r - 5);
    if (r % 4 == 2) last = Integer(r - 5);
    if (r % 4 == 3) {
      first = Integer(-r);
      last = Integer(r);
    }
    Family t = Family::translates({base, step, first, last, std::nullopt});
    if (!non_open_member(x, t)) parts.push_back(t);
  }
  return Family::union_of(parts);
}

}  // namespace

TEST_CASE("unions of presentations") {
  Space st = B(BuiltinLine::st);
  CHECK(family_union(st, unit_translates()).set == all_translates(list({oo(0, 1)}), 1));
  CHECK(family_union(st, Family::list({L(ps({oo(0, 1)})), L(ps({oo(2, 3)}))})).set == ps({oo(0, 1), oo(2, 3)}));
  Family overlapping = Family::translates({ps({oo(0, 2)}), 1, Integer(0), std::nullopt, std::nullopt});
  CHECK(family_union(st, overlapping).set == PeriodicSet::ray_above(0));
}

TEST_CASE("translates of (0,1) over om and lom") {
  FamilyReport om = classify_family(B(BuiltinLine::om), unit_translates());
  CHECK_FALSE(om.locally_finite);
  CHECK_FALSE(om.admissible);
  CHECK_FALSE(om.essentially_finite);
  CHECK_FALSE(om.union_open);
  CHECK(om.union_weakly_open);
  REQUIRE(om.admissible_witness);
  CHECK(om.admissible_witness->set.is_line());
  REQUIRE(om.lf_witness);
  CHECK(om.lf_witness->set.is_line());

  FamilyReport lom = classify_family(B(BuiltinLine::lom), unit_translates());
  CHECK(lom.locally_finite);
  CHECK(lom.admissible);
  CHECK_FALSE(lom.essentially_finite);
  CHECK(lom.union_open);

  FamilyReport list = classify_family(B(BuiltinLine::om), Family::list({L(ps({oo(0, 1)})), L(ps({oo(2, 3)}))}));
  CHECK(list.essentially_finite);
  CHECK(list.admissible);
  CHECK(list.locally_finite);
  for (auto id : all_builtins()) CHECK(smop_family_is_admissible(B(id)));
}

TEST_CASE("non-open members are rejected") {
  Family closed = Family::translates({ps({cc(0, 1)}), 2, std::nullopt, std::nullopt, std::nullopt});
  CHECK_THROWS_AS(classify_family(B(BuiltinLine::st), closed), Error);
  // clipped to a carrier: relatively open there
  Space half = B(BuiltinLine::om).subspace(L(PeriodicSet::ray_above(0, true)));
  Family clipped =
      Family::translates({ps({oo(-1, 1)}), 3, std::nullopt, std::nullopt, PeriodicSet::ray_above(0, true)});
  CHECK_FALSE(non_open_member(half, clipped));
  FamilyReport r = classify_family(half, clipped);
  CHECK_FALSE(r.locally_finite);
}

TEST_CASE("chains and one-sided translates") {
  Family chain = Family::chain({ps({oo(-1, 1)}), 1, Integer(0), Integer(1)});
  FamilyReport lom = classify_family(B(BuiltinLine::lom), chain);
  CHECK_FALSE(lom.locally_finite);
  CHECK(lom.admissible);
  CHECK(lom.union_set.set.is_line());
  Family right = Family::translates({ps({oo(0, 1)}), 1, Integer(0), std::nullopt, std::nullopt});
  FamilyReport lpom = classify_family(B(BuiltinLine::lpom), right);
  CHECK(lpom.locally_finite);  // smops of l+om are bounded above
  FamilyReport slpom = classify_family(B(BuiltinLine::slpom), right);
  CHECK_FALSE(slpom.locally_finite);
  CHECK_FALSE(slpom.admissible);
  Family left = Family::translates({ps({oo(0, 1)}), 1, std::nullopt, Integer(0), std::nullopt});
  CHECK(classify_family(B(BuiltinLine::slpom), left).admissible);
}

TEST_CASE("finite families agree with the finite oracle") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    Space x = random_finite_space(rng, 1 + i % 5);
    FFamily lo = x.family(Derived::Open);
    std::vector<SetValue> members;
    std::vector<Mask> masks;
    for (Mask s : lo.sets())
      if (rng() % 2) {
        members.push_back(F(s));
        masks.push_back(s);
      }
    FamilyReport r = classify_family(x, Family::list(members));
    FamilyFlags g = classify_family_finite(x.smops(), FFamily(x.universe(), masks), x.carrier_mask());
    CHECK(r.essentially_finite == g.essentially_finite);
    CHECK(r.locally_finite == g.locally_finite);
    CHECK(r.admissible == g.admissible);
    CHECK(r.union_open);
  }
}

TEST_CASE("random presentations: implications and direct oracles") {
  std::mt19937_64 rng(23);
  for (auto id : all_builtins()) {
    Space x = B(id);
    CAPTURE(x.name());
    bool small = classify_space(x).is_small;
    for (int i = 0; i < 25; ++i) {
      Family f = random_family_on(x, rng);
      CAPTURE(to_string(f));
      FamilyReport r = classify_family(x, f);
      if (r.locally_finite) CHECK(r.admissible);
      if (r.essentially_finite) CHECK(r.admissible);
      if (small && r.admissible) CHECK(r.essentially_finite);
      if (r.admissible) CHECK(r.union_open);
      PeriodicSet u = r.union_set.set;
      if (!r.admissible) {
        REQUIRE(r.admissible_witness);
        PeriodicSet w = r.admissible_witness->set;
        CHECK(x.is_smop(*r.admissible_witness));
        for (long K : {4, 16, 40}) CHECK_FALSE(intersect(truncated_union(f, K), w) == intersect(u, w));
      }
      if (!r.locally_finite) {
        REQUIRE(r.lf_witness);
        CHECK(x.is_smop(*r.lf_witness));
        CHECK(members_meeting(f, r.lf_witness->set, 40) > members_meeting(f, r.lf_witness->set, 10));
      }
      if (!r.essentially_finite) CHECK_FALSE(truncated_union(f, 40) == u);
      if (r.essentially_finite && !f.is_finite()) CHECK(truncated_union(f, 60) == u);
      if (r.locally_finite) {
        // far members never meet these smops
        for (const auto& l : {PeriodicSet::open_interval(-3, 3), PeriodicSet::ray_above(0), PeriodicSet::ray_below(0)})
          if (x.is_smop(L(l))) CHECK(members_meeting(f, l, 60) == members_meeting(f, l, 30));
      }
    }
  }
}
