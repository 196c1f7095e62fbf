#pragma once

// Smallification, partial topologization, and the correspondence between
// partially topological spaces and bornological universes with an open basis.

#include <optional>
#include <string>

#include "locus/maps.hpp"
#include "locus/spaces.hpp"

namespace locus {

/// Same carrier, smops = open sets of x.
Space sm(const Space& x);
/// Same carrier, smops = small weakly open sets of x.
Space pt(const Space& x);

/// Equal carriers and equal smop families (line spaces: equal effective shapes).
bool same_smops(const Space& a, const Space& b);

/// A carrier with a topology and a bornology. Finite: explicit families.
/// Line: the topology is always the relatively open subsets of the carrier
/// and the bornology is given per side (Bounded: bounded on that side;
/// Any: no condition).
struct BornUniverse {
  Backend backend = Backend::Finite;
  std::optional<FiniteUniverse> universe;
  Mask carrier = 0;
  FFamily topology{FiniteUniverse(1)};
  FFamily bornology{FiniteUniverse(1)};
  PeriodicSet line_carrier;
  Shape bounded_sides;
  std::string name;

  friend bool operator==(const BornUniverse& a, const BornUniverse& b);
};

/// Finite constructor; validates the topology and bornology axioms and the
/// existence of an open basis.
BornUniverse born_universe(FiniteUniverse universe, Mask carrier, FFamily topology, FFamily bornology,
                           std::string name = {});
/// Line constructor; sides other than Bounded are normalized to Any.
BornUniverse born_universe(PeriodicSet carrier, Shape bounded_sides, std::string name = {});

/// Requires x partially topological.
BornUniverse ubor(const Space& x);
Space lss(const BornUniverse& u);

/// Finite topology as a small partially topological space.
Space top_embed(FiniteUniverse universe, const FFamily& topology, std::string name = {});

std::string to_string(const BornUniverse& u);

/// Per-instance universal property checks. A morphism is a bounded
/// continuous map.
struct TriangleReport {
  bool applicable = true;     // target small (sm) / source partially topological (pt)
  bool unit_is_morphism = false;
  bool given_is_morphism = false;
  bool factor_is_morphism = false;
  bool holds = false;
  std::string detail;
};

/// f: X → Y with Y small. The unit X → sm(X) is the identity; f factors
/// as the same function sm(X) → Y.
TriangleReport sm_reflection(const SpaceMap& f, const MapCheckOptions& options = {});
/// f: Z → X with Z partially topological. The counit pt(X) → X is the
/// identity; f factors as the same function Z → pt(X).
TriangleReport pt_coreflection(const SpaceMap& f, const MapCheckOptions& options = {});

}  // namespace locus
