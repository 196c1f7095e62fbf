#include "locus/finite_core.hpp"

#include <algorithm>

#include "locus/rational.hpp"

namespace locus {

FiniteUniverse::FiniteUniverse(int size) : size_(size) {
  if (size < 1 || size > kMaxFiniteUniverse)
    fail(Error::Kind::SizeGuard, "finite universe size must be in 1.." + std::to_string(kMaxFiniteUniverse) +
                                     ", got " + std::to_string(size));
}

FSet::FSet(FiniteUniverse universe, Mask members) : universe_(universe), members_(members) {
  if (!universe_.contains(members_)) fail(Error::Kind::Precondition, "set has members outside its universe");
}

FSet FSet::from_elements(FiniteUniverse universe, const std::vector<int>& elements) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 0 || e >= universe.size()) fail(Error::Kind::Precondition, "element out of universe range");
    m |= Mask{1} << e;
  }
  return FSet(universe, m);
}

FFamily::FFamily(FiniteUniverse universe, std::vector<Mask> sets) : universe_(universe), sets_(std::move(sets)) {
  for (Mask m : sets_)
    if (!universe_.contains(m)) fail(Error::Kind::Precondition, "family member outside its universe");
  std::sort(sets_.begin(), sets_.end());
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

FFamily FFamily::powerset(FiniteUniverse universe, Mask carrier) {
  std::vector<Mask> all;
  for (Mask s = carrier;; s = (s - 1) & carrier) {
    all.push_back(s);
    if (s == 0) break;
  }
  return FFamily(universe, std::move(all));
}

bool FFamily::contains(Mask m) const { return std::binary_search(sets_.begin(), sets_.end(), m); }

bool FFamily::includes(const FFamily& other) const {
  return std::includes(sets_.begin(), sets_.end(), other.sets_.begin(), other.sets_.end());
}

Mask FFamily::union_of() const {
  Mask u = 0;
  for (Mask m : sets_) u |= m;
  return u;
}

void FFamily::insert(Mask m) {
  if (!universe_.contains(m)) fail(Error::Kind::Precondition, "family member outside its universe");
  auto it = std::lower_bound(sets_.begin(), sets_.end(), m);
  if (it == sets_.end() || *it != m) sets_.insert(it, m);
}

FamilyIndex::FamilyIndex(const FFamily& family) : present_(std::size_t{1} << family.universe().size(), false) {
  for (Mask m : family.sets()) present_[m] = true;
}

namespace {

void require_same_universe(const FiniteUniverse& a, const FiniteUniverse& b) {
  if (!(a == b)) fail(Error::Kind::Precondition, "universe mismatch");
}

FFamily from_bitmap(FiniteUniverse universe, const std::vector<bool>& present) {
  std::vector<Mask> sets;
  for (std::size_t m = 0; m < present.size(); ++m)
    if (present[m]) sets.push_back(static_cast<Mask>(m));
  return FFamily(universe, std::move(sets));
}

}  // namespace

FFamily family_union(const FFamily& a, const FFamily& b) {
  require_same_universe(a.universe(), b.universe());
  std::vector<Mask> all = a.sets();
  all.insert(all.end(), b.sets().begin(), b.sets().end());
  return FFamily(a.universe(), std::move(all));
}

FFamily family_trace(const FFamily& family, const FSet& y) {
  require_same_universe(family.universe(), y.universe());
  return family_trace(family, y.mask());
}

FFamily family_trace(const FFamily& family, Mask y) {
  std::vector<Mask> traced;
  traced.reserve(family.size());
  for (Mask m : family.sets()) traced.push_back(m & y);
  return FFamily(family.universe(), std::move(traced));
}

FFamily compatible_sets(const FFamily& family) { return compatible_sets(family, family.universe().full()); }

FFamily compatible_sets(const FFamily& family, Mask carrier) {
  FamilyIndex index(family);
  std::vector<Mask> out;
  for (Mask y = carrier;; y = (y - 1) & carrier) {
    bool ok = std::all_of(family.sets().begin(), family.sets().end(),
                          [&](Mask a) { return index.contains(y & a); });
    if (ok) out.push_back(y);
    if (y == 0) break;
  }
  return FFamily(family.universe(), std::move(out));
}

FFamily union_closure(const FFamily& family) {
  std::vector<bool> present(std::size_t{1} << family.universe().size(), false);
  std::vector<Mask> members{0};
  present[0] = true;
  for (Mask a : family.sets()) {
    std::size_t n = members.size();
    for (std::size_t i = 0; i < n; ++i) {
      Mask u = members[i] | a;
      if (!present[u]) {
        present[u] = true;
        members.push_back(u);
      }
    }
  }
  return from_bitmap(family.universe(), present);
}

FFamily intersection_closure(const FFamily& family) {
  std::vector<bool> present(std::size_t{1} << family.universe().size(), false);
  std::vector<Mask> members;
  for (Mask a : family.sets()) {
    std::size_t n = members.size();
    for (std::size_t i = 0; i < n; ++i) {
      Mask x = members[i] & a;
      if (!present[x]) {
        present[x] = true;
        members.push_back(x);
      }
    }
    if (!present[a]) {
      present[a] = true;
      members.push_back(a);
    }
  }
  return from_bitmap(family.universe(), present);
}

FFamily downward_closure(const FFamily& family) {
  std::vector<bool> present(std::size_t{1} << family.universe().size(), false);
  for (Mask a : family.sets()) {
    if (present[a]) continue;
    for (Mask s = a;; s = (s - 1) & a) {
      present[s] = true;
      if (s == 0) break;
    }
  }
  return from_bitmap(family.universe(), present);
}

FFamily generate_bornology(const FFamily& family) {
  if (family.empty()) return family;
  FFamily closed = union_closure(family);
  return downward_closure(closed);
}

FFamily generate_ring(const FFamily& family) {
  // Unions of finite intersections are already ∩-closed by distributivity.
  return union_closure(intersection_closure(family));
}

FFamily generate_topology(const FFamily& family) { return union_closure(family); }

bool is_union_closed(const FFamily& family) {
  FamilyIndex index(family);
  for (Mask a : family.sets())
    for (Mask b : family.sets())
      if (!index.contains(a | b)) return false;
  return true;
}

bool is_intersection_closed(const FFamily& family) {
  FamilyIndex index(family);
  for (Mask a : family.sets())
    for (Mask b : family.sets())
      if (!index.contains(a & b)) return false;
  return true;
}

FamilyFlags classify_family_finite(const FFamily& space_smops, const FFamily& family) {
  return classify_family_finite(space_smops, family, space_smops.union_of());
}

FamilyFlags classify_family_finite(const FFamily& space_smops, const FFamily& family, Mask carrier) {
  require_same_universe(space_smops.universe(), family.universe());
  FamilyIndex smops(space_smops);
  for (Mask u : family.sets()) {
    if ((u & ~carrier) != 0) fail(Error::Kind::Precondition, "family member " + format_mask(u) + " outside carrier");
    for (Mask l : space_smops.sets())
      if (!smops.contains(u & l)) fail(Error::Kind::Precondition, "family member " + format_mask(u) + " is not open");
  }
  return FamilyFlags{};
}

std::vector<FFamily> ef_families(const FFamily& u, const FFamily& v) {
  (void)v;  // every subfamily of a finite family is essentially finite on any set
  if (u.size() > 20) fail(Error::Kind::SizeGuard, "ef_families: more than 2^20 subfamilies");
  std::vector<FFamily> out;
  const auto& members = u.sets();
  std::size_t count = std::size_t{1} << members.size();
  out.reserve(count);
  for (std::size_t pick = 0; pick < count; ++pick) {
    std::vector<Mask> sub;
    for (std::size_t i = 0; i < members.size(); ++i)
      if ((pick >> i) & 1U) sub.push_back(members[i]);
    out.emplace_back(u.universe(), std::move(sub));
  }
  std::sort(out.begin(), out.end(), [](const FFamily& a, const FFamily& b) { return a.sets() < b.sets(); });
  return out;
}

std::vector<FFamily> ess_fin(const FFamily& u) {
  return ef_families(u, FFamily(u.universe(), {u.universe().full()}));
}

std::string format_mask(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if ((m >> i) & 1U) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

std::string format_family(const FFamily& family) {
  std::string s = "{";
  bool first = true;
  for (Mask m : family.sets()) {
    if (!first) s += ", ";
    s += format_mask(m);
    first = false;
  }
  return s + "}";
}

}  // namespace locus
