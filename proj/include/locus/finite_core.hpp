#pragma once

// Exact set-family algebra over a finite universe {0, ..., n-1}.
//
// Sets are bitmasks; families are sorted, duplicate-free vectors of masks, so
// structural equality of FFamily values is equality of the families they
// denote. Every routine here enumerates; they are the reference oracle for the
// symbolic procedures used on the rational line.

#include <cstdint>
#include <string>
#include <vector>

namespace locus {

using Mask = std::uint32_t;

/// Hard cap on universe size for powerset enumeration.
inline constexpr int kMaxFiniteUniverse = 16;

class FiniteUniverse {
 public:
  explicit FiniteUniverse(int size);

  int size() const { return size_; }
  Mask full() const { return size_ == 32 ? ~Mask{0} : ((Mask{1} << size_) - 1); }
  bool contains(Mask m) const { return (m & ~full()) == 0; }

  friend bool operator==(const FiniteUniverse&, const FiniteUniverse&) = default;

 private:
  int size_;
};

class FSet {
 public:
  FSet(FiniteUniverse universe, Mask members);
  static FSet from_elements(FiniteUniverse universe, const std::vector<int>& elements);

  const FiniteUniverse& universe() const { return universe_; }
  Mask mask() const { return members_; }
  bool contains(int element) const { return (members_ >> element) & 1U; }

  friend bool operator==(const FSet&, const FSet&) = default;

 private:
  FiniteUniverse universe_;
  Mask members_;
};

class FFamily {
 public:
  explicit FFamily(FiniteUniverse universe) : universe_(universe) {}
  FFamily(FiniteUniverse universe, std::vector<Mask> sets);

  static FFamily powerset(FiniteUniverse universe, Mask carrier);

  const FiniteUniverse& universe() const { return universe_; }
  const std::vector<Mask>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  bool contains(Mask m) const;
  bool includes(const FFamily& other) const;  // other ⊆ this
  Mask union_of() const;

  void insert(Mask m);

  friend bool operator==(const FFamily&, const FFamily&) = default;

 private:
  FiniteUniverse universe_;
  std::vector<Mask> sets_;
};

/// Membership bitmap over P(universe) for O(1) lookups during enumeration.
class FamilyIndex {
 public:
  explicit FamilyIndex(const FFamily& family);
  bool contains(Mask m) const { return present_[m]; }

 private:
  std::vector<bool> present_;
};

FFamily family_union(const FFamily& a, const FFamily& b);

/// { A ∩ Y : A ∈ F }.
FFamily family_trace(const FFamily& family, const FSet& y);
FFamily family_trace(const FFamily& family, Mask y);

/// { Y ⊆ carrier : Y ∩ A ∈ A for all A ∈ A }, by full enumeration of P(carrier).
FFamily compatible_sets(const FFamily& family);
FFamily compatible_sets(const FFamily& family, Mask carrier);

FFamily union_closure(const FFamily& family);         // includes ∅ (the empty union)
FFamily intersection_closure(const FFamily& family);  // non-empty subfamilies only
FFamily downward_closure(const FFamily& family);

FFamily generate_bornology(const FFamily& family);
FFamily generate_ring(const FFamily& family);
FFamily generate_topology(const FFamily& family);

bool is_union_closed(const FFamily& family);
bool is_intersection_closed(const FFamily& family);

struct FamilyFlags {
  bool essentially_finite = true;
  bool locally_finite = true;
  bool admissible = true;
};

/// Oracle endpoint: on a finite universe every family is finite, so all flags
/// hold. Rejects families that are not open (not compatible with the smops).
FamilyFlags classify_family_finite(const FFamily& space_smops, const FFamily& family, Mask carrier);
FamilyFlags classify_family_finite(const FFamily& space_smops, const FFamily& family);

/// Subfamilies of `u` that are essentially finite on every member of `v`.
std::vector<FFamily> ef_families(const FFamily& u, const FFamily& v);
std::vector<FFamily> ess_fin(const FFamily& u);

/// "{1,3}" with 1-based element labels, matching the document syntax.
std::string format_mask(Mask m);
std::string format_family(const FFamily& family);

}  // namespace locus
