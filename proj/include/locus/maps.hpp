#pragma once

// Mappings between locally small spaces and their classification.
//
// Finite maps are tables and are classified by enumeration. Maps between
// line spaces are piecewise affine; their classes are decided by exact rules
// (continuity at breakpoints, behaviour of the two unbounded pieces) and every
// positive verdict is cross-checked by a seeded refutation search.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locus/families.hpp"
#include "locus/spaces.hpp"

namespace locus {

struct AffinePiece {
  QInterval domain;
  Rational slope;
  Rational offset;

  Rational at(const Rational& x) const { return slope * x + offset; }
};

class PiecewiseAffine {
 public:
  /// Pieces must be pairwise disjoint; they are stored sorted.
  explicit PiecewiseAffine(std::vector<AffinePiece> pieces);
  static PiecewiseAffine affine(const Rational& slope, const Rational& offset);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  /// The piece containing x, if any.
  const AffinePiece* piece_at(const Rational& x) const;
  /// The piece unbounded above (right) or below, if any.
  const AffinePiece* tail_piece(bool right) const;

  /// f(S ∩ domain) for S inside the covered region.
  PeriodicSet image(const PeriodicSet& s) const;
  /// { x ∈ within : f(x) ∈ T }.
  PeriodicSet preimage(const PeriodicSet& t, const PeriodicSet& within) const;

 private:
  std::vector<AffinePiece> pieces_;
};

/// image[i] is the target point of source point i; -1 off the carrier.
struct FiniteTable {
  std::vector<int> image;
};

class SpaceMap {
 public:
  /// Validates totality on the source carrier and that images land in the target carrier.
  static SpaceMap finite(Space source, Space target, FiniteTable table, std::string name = "f");
  static SpaceMap piecewise(Space source, Space target, PiecewiseAffine rule, std::string name = "f");
  static SpaceMap identity(Space source, Space target, std::string name = "id");
  /// Constant map onto a carrier point of the target.
  static SpaceMap constant(Space source, Space target, const SetValue& point, std::string name = "const");

  const Space& source() const { return source_; }
  const Space& target() const { return target_; }
  const std::string& name() const { return name_; }
  Backend backend() const { return source_.backend(); }
  const FiniteTable* table() const { return std::get_if<FiniteTable>(&rule_); }
  const PiecewiseAffine* rule() const { return std::get_if<PiecewiseAffine>(&rule_); }

  SetValue image(const SetValue& s) const;
  SetValue preimage(const SetValue& t) const;

  /// The same function between other spaces on the same carriers.
  SpaceMap between(Space source, Space target) const;

 private:
  SpaceMap(Space source, Space target, std::variant<FiniteTable, PiecewiseAffine> rule, std::string name);

  Space source_, target_;
  std::variant<FiniteTable, PiecewiseAffine> rule_;
  std::string name_;
};

/// g ∘ f; requires f's target carrier to equal g's source carrier.
SpaceMap compose(const SpaceMap& g, const SpaceMap& f);

struct MapVerdict {
  bool holds = true;
  /// Counterwitness: a target set with bad preimage, or (bounded) a source
  /// smop with non-small image.
  std::optional<SetValue> witness;
  std::string detail;
};

struct MapCheckOptions {
  int samples = 500;
  std::uint64_t seed = 1;
};

struct ClassificationReport {
  MapVerdict weakly_continuous;
  MapVerdict bounded;
  MapVerdict continuous;
  MapVerdict bounded_continuous;
  MapVerdict strictly_continuous;
  int samples_checked = 0;
  int families_checked = 0;
};

/// Throws Internal when an exact verdict disagrees with sampling, or when
/// strict continuity disagrees with bounded ∧ continuous.
ClassificationReport classify_map(const SpaceMap& f, const MapCheckOptions& options = {});

MapVerdict weakly_continuous(const SpaceMap& f, const MapCheckOptions& options = {});
MapVerdict bounded(const SpaceMap& f, const MapCheckOptions& options = {});
MapVerdict continuous(const SpaceMap& f, const MapCheckOptions& options = {});
/// f⁻¹(L_Y) ⊆ L_X.
MapVerdict preimages_are_smops(const SpaceMap& f, const MapCheckOptions& options = {});

struct BcReport {
  MapVerdict images_of_small;    // f(L^s_X) ⊆ L^s_Y
  MapVerdict preimages_of_open;  // f⁻¹(L^o_Y) ⊆ L^o_X
  bool bc = false;
  bool bounded_continuous = false;
};

/// Throws Internal when (bc) and bounded ∧ continuous disagree.
BcReport check_bc_characterization(const SpaceMap& f, const MapCheckOptions& options = {});

/// Preimages of the given admissible target families; any non-admissible
/// preimage refutes. Throws Precondition on an input family that is not
/// admissible in the target.
MapVerdict check_strict_continuity(const SpaceMap& f, const std::vector<Family>& families);

/// Admissible target families built from the map's breakpoints and tails,
/// plus seeded random ones. Line maps only.
std::vector<Family> strict_sample_catalog(const SpaceMap& f, const MapCheckOptions& options = {});

/// Fixed line and finite instances used by the consistency suites.
std::vector<SpaceMap> map_catalog();

std::string to_string(const PiecewiseAffine& f);
std::string to_string(const SpaceMap& f);

}  // namespace locus
