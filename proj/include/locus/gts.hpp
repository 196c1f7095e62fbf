#pragma once

// Generalized topological spaces (X, Op, Cov) on small finite carriers.
//
// Cov is stored as a bitmap over the subfamilies of Op: bit `code` is set
// when the family {op[i] : bit i of code} is admissible.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "locus/spaces.hpp"

namespace locus {

inline constexpr int kMaxGtsCarrier = 5;
inline constexpr int kMaxGtsOp = 20;

class Gts {
 public:
  /// Throws Precondition when a cover has a non-open member, SizeGuard past the limits.
  static Gts make(FiniteUniverse universe, Mask carrier, FFamily op, const std::vector<FFamily>& cov);
  static Gts with_full_cov(FiniteUniverse universe, Mask carrier, FFamily op);

  const FiniteUniverse& universe() const { return universe_; }
  Mask carrier() const { return carrier_; }
  const FFamily& op() const { return op_; }

  std::size_t op_size() const { return op_.size(); }
  std::uint32_t subfamily_count() const { return std::uint32_t{1} << op_.size(); }
  bool admissible(std::uint32_t code) const { return cov_[code]; }
  bool admissible(const FFamily& family) const;
  bool cov_is_full() const { return cov_count_ == subfamily_count(); }
  std::size_t cov_size() const { return cov_count_; }

  FFamily family_at(std::uint32_t code) const;
  Mask union_at(std::uint32_t code) const;
  /// Code of a family all of whose members are open; nullopt otherwise.
  std::optional<std::uint32_t> code_of(const FFamily& family) const;
  std::vector<FFamily> cov_families() const;

  friend bool operator==(const Gts& a, const Gts& b) {
    return a.universe_ == b.universe_ && a.carrier_ == b.carrier_ && a.op_ == b.op_ && a.cov_ == b.cov_;
  }

 private:
  Gts(FiniteUniverse universe, Mask carrier, FFamily op);
  void set_admissible(std::uint32_t code);

  FiniteUniverse universe_;
  Mask carrier_;
  FFamily op_;
  std::vector<bool> cov_;
  std::size_t cov_count_ = 0;
};

struct AxiomVerdict {
  std::string axiom;
  bool holds = true;
  std::string counterexample;
};

struct AxiomReport {
  std::array<AxiomVerdict, 5> axioms;  // finiteness, stability, transitivity, saturation, regularity
  bool all() const;
  const AxiomVerdict& get(const std::string& name) const;
};

AxiomReport check_axioms(const Gts& g);

/// (X, L^o_X, EF(L^o_X, L_X)) of a finite space.
Gts from_space(const Space& x);

/// Sets S on which every admissible family is essentially finite.
bool is_small_in(const Gts& g, Mask s);

struct ToSpaceResult {
  Space space;              // (X, Smop_X)
  bool cov_is_ef = false;   // Cov_X = EF(Smop_X^o, Smop_X)
};

/// Throws Precondition when an axiom fails or no admissible cover by small open sets exists.
ToSpaceResult to_space(const Gts& g, std::string name = "from-gts");

/// Smallest generalized topology on `carrier` containing every family of psi.
Gts generate_gt(FiniteUniverse universe, Mask carrier, const std::vector<FFamily>& psi);

/// Dropping any admissible family not in psi, or any open set not forced by
/// psi, breaks an axiom. Intended for carriers of at most 3 points.
bool generated_is_minimal(const Gts& g, const std::vector<FFamily>& psi);

struct SubspaceCheck {
  Gts traced;    // ⟨⟨{L_X}⟩_X ∩₂ Y⟩_Y
  Gts induced;   // ⟨{L_X ∩₁ Y}⟩_Y
  bool equal = false;
};

SubspaceCheck subspace_gts(const Space& x, Mask y);

std::string to_string(const Gts& g);

}  // namespace locus
