#pragma once

// Finitely presented open families and their classification.
//
// A presentation is a tree of atoms: explicit lists, translate families
// {(B + k·step) ∩ clip : k in a range} with a bounded base B, and increasing
// chains M_j = ⋃{B + k·step : |k| ≤ n0 + j·stride}. Unions of presentations
// are flattened into their atoms.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locus/spaces.hpp"

namespace locus {

struct TranslatesAtom {
  PeriodicSet base;  // bounded
  Rational step;     // positive
  std::optional<Integer> first, last;
  std::optional<PeriodicSet> clip;

  bool infinite() const { return !first || !last; }
  PeriodicSet member(const Integer& k) const;
  PeriodicSet union_set() const;
};

struct ChainAtom {
  PeriodicSet base;  // bounded
  Rational step;
  Integer start;     // n0 >= 0
  Integer stride;    // >= 0

  Integer radius(const Integer& j) const { return start + j * stride; }
  PeriodicSet member(const Integer& j) const;
  PeriodicSet union_set() const;
  /// Whether the members strictly increase (infinitely many distinct members).
  bool growing() const { return stride > 0 && !base.is_empty(); }
};

class Family {
 public:
  static Family list(std::vector<SetValue> members);
  static Family translates(TranslatesAtom atom);
  static Family chain(ChainAtom atom);
  static Family union_of(const std::vector<Family>& parts);

  const std::vector<SetValue>& list_members() const { return list_; }
  const std::vector<TranslatesAtom>& translate_atoms() const { return translates_; }
  const std::vector<ChainAtom>& chain_atoms() const { return chains_; }

  bool is_finite() const;
  /// Some members, finite lists first; for infinite atoms, members with small indices.
  std::vector<SetValue> sample_members(std::size_t per_atom) const;

  Backend backend() const;

 private:
  std::vector<SetValue> list_;
  std::vector<TranslatesAtom> translates_;
  std::vector<ChainAtom> chains_;
};

/// Exact union of all members.
SetValue family_union(const Space& x, const Family& f);

/// Every member open in X; returns the first offending member otherwise.
std::optional<SetValue> non_open_member(const Space& x, const Family& f);

struct FamilyReport {
  bool essentially_finite = true;
  bool locally_finite = true;
  bool admissible = true;
  bool union_open = true;
  bool union_weakly_open = true;
  SetValue union_set;
  /// Part of the union outside the list members that infinite atoms must
  /// cover; bounded iff essentially finite.
  std::optional<SetValue> remainder;
  /// A smop meeting infinitely many members.
  std::optional<SetValue> lf_witness;
  /// A smop L with (⋃U) ∩ L not reached by any finite subfamily.
  std::optional<SetValue> admissible_witness;
  std::string note;
};

/// Throws Precondition if some member is not open. With
/// `require_open_members` off, only the covering structure is classified;
/// used for presentations whose members were split along map pieces.
FamilyReport classify_family(const Space& x, const Family& f, bool require_open_members = true);

/// The smop family of any locally small space is admissible: for L take {L}.
bool smop_family_is_admissible(const Space& x);

std::string to_string(const Family& f);

}  // namespace locus
