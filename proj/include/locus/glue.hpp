#pragma once

// Admissible unions of locally small spaces.
//
// Finite atlases are glued exactly: the smops are the ring generated by all
// chart smops. Periodic atlases translate one chart with a bounded carrier
// by every multiple of a step; their smops are finite unions of chart smops.

#include <optional>
#include <string>
#include <vector>

#include "locus/families.hpp"
#include "locus/spaces.hpp"

namespace locus {

struct StarViolation {
  std::string first, second;  // chart labels
  std::string clause;         // "overlap-open" or "trace-equal"
  std::string detail;
};

struct PeriodicAtlas {
  Space chart;   // line space with bounded carrier
  Rational step; // positive
};

std::optional<StarViolation> check_star(const std::vector<Space>& charts);
std::optional<StarViolation> check_star(const PeriodicAtlas& atlas);

struct GlueResult {
  Space space;
  bool ring_is_finite_unions = true;  // smops are exactly finite unions of chart smops
  bool charts_open_subspaces = true;  // each chart is an open subspace with the same smops
  bool charts_admissible = true;      // the carrier family is admissible
  std::string detail;
};

/// Throws Precondition (with the violation) when (⋆) fails.
GlueResult glue(const std::vector<Space>& charts, std::string name = "glued");
GlueResult glue(const PeriodicAtlas& atlas, std::string name = "glued");

/// Largest offset |k| for which chart 0 and chart k can overlap.
Integer overlap_reach(const PeriodicAtlas& atlas);

/// Glues all open small subspaces (L, L_X ∩₁ L) of a finite space and
/// reports whether X is reproduced.
bool canonical_self_union(const Space& x);

}  // namespace locus
