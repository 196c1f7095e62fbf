#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace locus;
using namespace locus::test;

TEST_CASE("family trace") {
  CHECK(family_trace(fam(3, {0, m({1}), m({1, 2})}), m({2, 3})) == fam(3, {0, m({2})}));
  CHECK(family_trace(fam(3, {}), m({2})).empty());
  CHECK(family_trace(fam(3, {m({1, 2, 3})}), m({1, 3})) == fam(3, {m({1, 3})}));
}

TEST_CASE("compatible sets") {
  CHECK(compatible_sets(fam(3, {0, m({1}), m({1, 2})})) ==
        fam(3, {0, m({1}), m({3}), m({1, 2}), m({1, 3}), m({1, 2, 3})}));
  FiniteUniverse u3(3);
  CHECK(compatible_sets(FFamily::powerset(u3, u3.full())) == FFamily::powerset(u3, u3.full()));
  CHECK(compatible_sets(fam(2, {m({1}), m({2})})) == fam(2, {m({1, 2})}));
}

TEST_CASE("generated families") {
  CHECK(generate_bornology(fam(3, {m({1}), m({2})})) == fam(3, {0, m({1}), m({2}), m({1, 2})}));
  CHECK(generate_bornology(fam(3, {m({1, 2, 3})})).size() == 8);
  CHECK(generate_bornology(fam(3, {0})) == fam(3, {0}));
  CHECK(generate_ring(fam(2, {m({1}), m({2})})) == fam(2, {0, m({1}), m({2}), m({1, 2})}));
  CHECK(generate_ring(fam(3, {m({1, 2, 3})})) == fam(3, {0, m({1, 2, 3})}));
  CHECK(generate_ring(fam(3, {m({1, 2}), m({2, 3})})) == fam(3, {0, m({2}), m({1, 2}), m({2, 3}), m({1, 2, 3})}));
  CHECK(generate_topology(fam(2, {m({1}), m({2})})) == fam(2, {0, m({1}), m({2}), m({1, 2})}));
  CHECK(generate_topology(fam(3, {m({1, 2}), m({2, 3})})) == fam(3, {0, m({1, 2}), m({2, 3}), m({1, 2, 3})}));
  FFamily top = fam(3, {0, m({1}), m({1, 2, 3})});
  CHECK(generate_topology(top) == top);
}

TEST_CASE("finite classification and EF families") {
  FFamily smops = fam(3, {0, m({1}), m({1, 2}), m({1, 2, 3})});
  auto flags = classify_family_finite(smops, fam(3, {m({1}), m({1, 2})}));
  CHECK(flags.essentially_finite);
  CHECK(flags.locally_finite);
  CHECK(flags.admissible);
  CHECK(classify_family_finite(smops, fam(3, {})).admissible);
  CHECK(classify_family_finite(smops, fam(3, {0})).admissible);
  CHECK_THROWS_AS(classify_family_finite(smops, fam(3, {m({2})})), Error);
  CHECK(ef_families(fam(2, {m({1}), m({2})}), fam(2, {m({1, 2})})).size() == 4);
  CHECK(ef_families(fam(2, {}), fam(2, {m({1, 2})})).size() == 1);
  CHECK(ess_fin(fam(2, {m({1})})).size() == 2);
}

TEST_CASE("labels print 1-based") {
  CHECK(format_mask(m({1, 3})) == "{1,3}");
  CHECK(format_family(fam(3, {0, m({2})})) == "{{}, {2}}");
}

TEST_CASE("random families: closure laws") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 1000; ++iter) {
    int n = 1 + iter % 5;
    FFamily a = intersection_closure(random_family(rng, n, 4));
    CHECK(is_intersection_closed(a));
    FFamily c = compatible_sets(a);
    CHECK(c.includes(a));
    CHECK(compatible_sets(c) == c);
  }
  for (int iter = 0; iter < 300; ++iter) {
    int n = 1 + iter % 5;
    FFamily a = random_family(rng, n, 4);
    FFamily b = family_union(a, random_family(rng, n, 2));
    using Gen = FFamily (*)(const FFamily&);
    for (Gen g : {Gen(&generate_ring), Gen(&generate_topology), Gen(&generate_bornology)}) {
      CHECK(g(g(a)) == g(a));
      CHECK(g(b).includes(g(a)));
    }
    // ring members that are unions of members of a belong to the topology
    FFamily ring = generate_ring(a), top = generate_topology(a);
    for (Mask r : ring.sets()) {
      Mask covered = 0;
      for (Mask s : a.sets())
        if ((s & ~r) == 0) covered |= s;
      if (covered == r) CHECK(top.contains(r));
    }
    Mask y = static_cast<Mask>(rng()) & FiniteUniverse(n).full();
    FFamily g = random_family(rng, n, 3);
    CHECK(family_trace(family_union(a, g), y) == family_union(family_trace(a, y), family_trace(g, y)));
  }
}
