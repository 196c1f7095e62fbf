#include "locus/gts.hpp"

#include <bit>
#include <unordered_set>

namespace locus {

namespace {

// Work budget for the exhaustive checks on non-degenerate Cov.
constexpr std::uint64_t kAxiomBudget = std::uint64_t{1} << 28;

void spend(std::uint64_t& work, std::uint64_t amount) {
  work += amount;
  if (work > kAxiomBudget) fail(Error::Kind::SizeGuard, "gts axiom check exceeds the work budget");
}

std::string subfamily_text(const Gts& g, std::uint32_t code) { return format_family(g.family_at(code)); }

/// Index of each open set, for O(1) membership of arbitrary masks.
std::vector<int> op_index(const Gts& g) {
  std::vector<int> idx(std::size_t{1} << g.universe().size(), -1);
  for (std::size_t i = 0; i < g.op().sets().size(); ++i) idx[g.op().sets()[i]] = static_cast<int>(i);
  return idx;
}

AxiomVerdict check_finiteness(const Gts& g, const std::vector<int>& idx) {
  AxiomVerdict v{"finiteness", true, {}};
  if (idx[0] < 0) return {v.axiom, false, "the empty union {} is not open"};
  if (idx[g.carrier()] < 0) return {v.axiom, false, "the empty intersection " + format_mask(g.carrier()) + " is not open"};
  const auto& sets = g.op().sets();
  for (Mask a : sets)
    for (Mask b : sets) {
      if (idx[a | b] < 0)
        return {v.axiom, false, "union of " + format_family(FFamily(g.universe(), {a, b})) + " is not open"};
      if (idx[a & b] < 0)
        return {v.axiom, false, "intersection of " + format_family(FFamily(g.universe(), {a, b})) + " is not open"};
    }
  // Every subfamily of a finite Op is finite, hence must be admissible.
  for (std::uint32_t code = 0; code < g.subfamily_count(); ++code)
    if (!g.admissible(code)) return {v.axiom, false, "finite family " + subfamily_text(g, code) + " is not admissible"};
  return v;
}

AxiomVerdict check_stability(const Gts& g, const std::vector<int>& idx, std::uint64_t& work) {
  AxiomVerdict v{"stability", true, {}};
  const auto& sets = g.op().sets();
  for (std::size_t vi = 0; vi < sets.size(); ++vi) {
    Mask vset = sets[vi];
    for (std::uint32_t code = 0; code < g.subfamily_count(); ++code) {
      if (!g.admissible(code)) continue;
      spend(work, sets.size());
      std::uint32_t traced = 0;
      bool open = true;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!((code >> i) & 1U)) continue;
        int j = idx[vset & sets[i]];
        if (j < 0) {
          open = false;
          break;
        }
        traced |= std::uint32_t{1} << j;
      }
      if (!open || !g.admissible(traced))
        return {v.axiom, false,
                "V = " + format_mask(vset) + ", U = " + subfamily_text(g, code) + ": V ∩₁ U is not admissible"};
    }
  }
  return v;
}

AxiomVerdict check_transitivity(const Gts& g, std::uint64_t& work) {
  AxiomVerdict v{"transitivity", true, {}};
  std::size_t n = g.op_size();
  // Admissible families grouped by their union.
  std::vector<std::vector<std::uint32_t>> covering(n);
  for (std::uint32_t code = 0; code < g.subfamily_count(); ++code) {
    if (!g.admissible(code)) continue;
    Mask u = g.union_at(code);
    for (std::size_t i = 0; i < n; ++i)
      if (g.op().sets()[i] == u) covering[i].push_back(code);
  }
  std::vector<char> seen(g.subfamily_count(), 0);
  for (std::uint32_t code = 0; code < g.subfamily_count(); ++code) {
    if (!g.admissible(code)) continue;
    std::vector<std::uint32_t> reach{0};
    bool possible = true;
    for (std::size_t i = 0; i < n && possible; ++i) {
      if (!((code >> i) & 1U)) continue;
      if (covering[i].empty()) possible = false;
      std::vector<std::uint32_t> next;
      for (std::uint32_t r : reach)
        for (std::uint32_t c : covering[i]) {
          std::uint32_t joined = r | c;
          if (!seen[joined]) {
            seen[joined] = 1;
            next.push_back(joined);
          }
        }
      spend(work, reach.size() * covering[i].size() + next.size());
      for (std::uint32_t x : next) seen[x] = 0;
      reach = std::move(next);
    }
    if (!possible) continue;
    for (std::uint32_t r : reach)
      if (!g.admissible(r))
        return {v.axiom, false,
                "U = " + subfamily_text(g, code) + " refined by admissible covers of its members to " +
                    subfamily_text(g, r) + ", which is not admissible"};
  }
  return v;
}

bool refines(const Gts& g, std::uint32_t u, std::uint32_t v) {
  const auto& sets = g.op().sets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!((u >> i) & 1U)) continue;
    bool inside = false;
    for (std::size_t j = 0; j < sets.size() && !inside; ++j)
      inside = ((v >> j) & 1U) && (sets[i] & ~sets[j]) == 0;
    if (!inside) return false;
  }
  return true;
}

AxiomVerdict check_saturation(const Gts& g, std::uint64_t& work) {
  AxiomVerdict v{"saturation", true, {}};
  std::vector<Mask> unions(g.subfamily_count());
  for (std::uint32_t code = 0; code < g.subfamily_count(); ++code) unions[code] = g.union_at(code);
  for (std::uint32_t u = 0; u < g.subfamily_count(); ++u) {
    if (!g.admissible(u)) continue;
    spend(work, g.subfamily_count());
    for (std::uint32_t w = 0; w < g.subfamily_count(); ++w) {
      if (g.admissible(w) || unions[w] != unions[u]) continue;
      if (refines(g, u, w))
        return {v.axiom, false,
                "U = " + subfamily_text(g, u) + " refines V = " + subfamily_text(g, w) +
                    " with the same union, but V is not admissible"};
    }
  }
  return v;
}

AxiomVerdict check_regularity(const Gts& g, const std::vector<int>& idx, std::uint64_t& work) {
  AxiomVerdict v{"regularity", true, {}};
  const auto& sets = g.op().sets();
  auto violation = [&](Mask w, std::uint32_t code) {
    return AxiomVerdict{v.axiom, false,
                        "W = " + format_mask(w) + " with U = " + subfamily_text(g, code) +
                            ": W ∩₁ U is open but W is not"};
  };
  if (g.cov_is_full()) {
    // With every subfamily admissible the best U for a given W is all open
    // U with W ∩ U open.
    for (Mask w = g.carrier();; w = (w - 1) & g.carrier()) {
      if (idx[w] < 0) {
        std::uint32_t code = 0;
        Mask reached = 0;
        for (std::size_t i = 0; i < sets.size(); ++i)
          if (idx[w & sets[i]] >= 0) {
            code |= std::uint32_t{1} << i;
            reached |= sets[i];
          }
        if ((w & ~reached) == 0) return violation(w, code);
      }
      if (w == 0) break;
    }
    return v;
  }
  for (std::uint32_t code = 0; code < g.subfamily_count(); ++code) {
    if (!g.admissible(code)) continue;
    Mask u = g.union_at(code);
    for (Mask w = u;; w = (w - 1) & u) {
      spend(work, sets.size());
      if (idx[w] < 0) {
        bool traces_open = true;
        for (std::size_t i = 0; i < sets.size() && traces_open; ++i)
          if ((code >> i) & 1U) traces_open = idx[w & sets[i]] >= 0;
        if (traces_open) return violation(w, code);
      }
      if (w == 0) break;
    }
  }
  return v;
}

int popcount(Mask m) { return std::popcount(m); }

}  // namespace

Gts::Gts(FiniteUniverse universe, Mask carrier, FFamily op)
    : universe_(universe), carrier_(carrier), op_(std::move(op)) {
  if (!universe_.contains(carrier_)) fail(Error::Kind::Precondition, "gts carrier leaves the universe");
  if (popcount(carrier_) > kMaxGtsCarrier)
    fail(Error::Kind::SizeGuard, "gts carrier has more than " + std::to_string(kMaxGtsCarrier) + " points");
  if (!(op_.universe() == universe_)) fail(Error::Kind::Precondition, "Op over another universe");
  for (Mask a : op_.sets())
    if (a & ~carrier_) fail(Error::Kind::Precondition, "open set " + format_mask(a) + " leaves the carrier");
  if (op_.size() > static_cast<std::size_t>(kMaxGtsOp))
    fail(Error::Kind::SizeGuard, "Op has more than " + std::to_string(kMaxGtsOp) + " members");
  cov_.assign(subfamily_count(), false);
}

void Gts::set_admissible(std::uint32_t code) {
  if (!cov_[code]) {
    cov_[code] = true;
    ++cov_count_;
  }
}

Gts Gts::make(FiniteUniverse universe, Mask carrier, FFamily op, const std::vector<FFamily>& cov) {
  Gts g(universe, carrier, std::move(op));
  for (const auto& f : cov) {
    auto code = g.code_of(f);
    if (!code) fail(Error::Kind::Precondition, "admissible family " + format_family(f) + " has a member outside Op");
    g.set_admissible(*code);
  }
  return g;
}

Gts Gts::with_full_cov(FiniteUniverse universe, Mask carrier, FFamily op) {
  Gts g(universe, carrier, std::move(op));
  g.cov_.assign(g.subfamily_count(), true);
  g.cov_count_ = g.subfamily_count();
  return g;
}

bool Gts::admissible(const FFamily& family) const {
  auto code = code_of(family);
  return code && cov_[*code];
}

FFamily Gts::family_at(std::uint32_t code) const {
  std::vector<Mask> out;
  for (std::size_t i = 0; i < op_.sets().size(); ++i)
    if ((code >> i) & 1U) out.push_back(op_.sets()[i]);
  return FFamily(universe_, std::move(out));
}

Mask Gts::union_at(std::uint32_t code) const {
  Mask u = 0;
  for (std::size_t i = 0; i < op_.sets().size(); ++i)
    if ((code >> i) & 1U) u |= op_.sets()[i];
  return u;
}

std::optional<std::uint32_t> Gts::code_of(const FFamily& family) const {
  std::uint32_t code = 0;
  const auto& sets = op_.sets();
  for (Mask a : family.sets()) {
    auto it = std::lower_bound(sets.begin(), sets.end(), a);
    if (it == sets.end() || *it != a) return std::nullopt;
    code |= std::uint32_t{1} << (it - sets.begin());
  }
  return code;
}

std::vector<FFamily> Gts::cov_families() const {
  std::vector<FFamily> out;
  for (std::uint32_t code = 0; code < subfamily_count(); ++code)
    if (cov_[code]) out.push_back(family_at(code));
  return out;
}

bool AxiomReport::all() const {
  for (const auto& a : axioms)
    if (!a.holds) return false;
  return true;
}

const AxiomVerdict& AxiomReport::get(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.axiom == name) return a;
  fail(Error::Kind::Usage, "unknown gts axiom '" + name + "'");
}

AxiomReport check_axioms(const Gts& g) {
  std::vector<int> idx = op_index(g);
  std::uint64_t work = 0;
  AxiomReport r;
  r.axioms[0] = check_finiteness(g, idx);
  if (g.cov_is_full() && r.axioms[0].holds) {
    // Op is a lattice and Cov = P(Op): images of admissible families under
    // the stability, transitivity and saturation constructions are
    // subfamilies of Op, hence admissible.
    r.axioms[1] = {"stability", true, {}};
    r.axioms[2] = {"transitivity", true, {}};
    r.axioms[3] = {"saturation", true, {}};
  } else {
    r.axioms[1] = check_stability(g, idx, work);
    r.axioms[2] = check_transitivity(g, work);
    r.axioms[3] = check_saturation(g, work);
  }
  r.axioms[4] = check_regularity(g, idx, work);
  return r;
}

Gts from_space(const Space& x) {
  if (x.backend() != Backend::Finite) fail(Error::Kind::Usage, "gts identification needs a finite space");
  FFamily op = x.family(Derived::Open);
  Gts g = Gts::make(x.universe(), x.carrier_mask(), op, ef_families(op, x.smops()));
  AxiomReport r = check_axioms(g);
  if (!r.all()) fail(Error::Kind::Internal, "the gts of a locally small space fails an axiom");
  return g;
}

bool is_small_in(const Gts& g, Mask s) {
  // Every family on a finite carrier is finite, so essentially finite on S.
  return (s & ~g.carrier()) == 0;
}

ToSpaceResult to_space(const Gts& g, std::string name) {
  AxiomReport r = check_axioms(g);
  for (const auto& a : r.axioms)
    if (!a.holds) fail(Error::Kind::Precondition, "gts fails " + a.axiom + ": " + a.counterexample);
  std::vector<Mask> smop;
  for (Mask a : g.op().sets())
    if (is_small_in(g, a)) smop.push_back(a);
  FFamily smops(g.universe(), smop);

  bool locally_small = false;
  for (std::uint32_t code = 0; code < g.subfamily_count() && !locally_small; ++code)
    locally_small = g.admissible(code) && g.union_at(code) == g.carrier() &&
                    std::ranges::all_of(g.family_at(code).sets(), [&](Mask a) { return is_small_in(g, a); });
  if (!locally_small) fail(Error::Kind::Precondition, "gts has no admissible cover by small open sets");

  ToSpaceResult out{Space::finite(g.universe(), g.carrier(), smops, std::move(name)), false};
  FFamily smop_open = out.space.family(Derived::Open);
  if (smop_open == g.op()) {
    std::vector<FFamily> ef = ef_families(smop_open, smops);
    out.cov_is_ef = ef.size() == g.cov_size() &&
                    std::ranges::all_of(ef, [&](const FFamily& f) { return g.admissible(f); });
  }
  return out;
}

Gts generate_gt(FiniteUniverse universe, Mask carrier, const std::vector<FFamily>& psi) {
  if (popcount(carrier) > kMaxGtsCarrier)
    fail(Error::Kind::SizeGuard, "gts carrier has more than " + std::to_string(kMaxGtsCarrier) + " points");
  std::vector<Mask> sets{carrier};
  for (const auto& f : psi) {
    if (!(f.universe() == universe)) fail(Error::Kind::Precondition, "family over another universe");
    for (Mask a : f.sets()) {
      if (a & ~carrier) fail(Error::Kind::Precondition, "set " + format_mask(a) + " leaves the carrier");
      sets.push_back(a);
    }
  }
  // Alternate the lattice closure (finiteness) with the sets forced open by
  // regularity until nothing changes. Cov is then all of P(Op).
  FFamily op = generate_ring(FFamily(universe, sets));
  for (bool changed = true; changed;) {
    changed = false;
    FamilyIndex index(op);
    std::vector<Mask> added;
    for (Mask w = carrier;; w = (w - 1) & carrier) {
      if (!index.contains(w)) {
        Mask reached = 0;
        for (Mask a : op.sets())
          if (index.contains(w & a)) reached |= a;
        if ((w & ~reached) == 0) added.push_back(w);
      }
      if (w == 0) break;
    }
    if (!added.empty()) {
      for (Mask a : op.sets()) added.push_back(a);
      op = generate_ring(FFamily(universe, added));
      changed = true;
    }
  }
  Gts g = Gts::with_full_cov(universe, carrier, op);
  if (!check_axioms(g).all()) fail(Error::Kind::Internal, "generated generalized topology fails an axiom");
  return g;
}

bool generated_is_minimal(const Gts& g, const std::vector<FFamily>& psi) {
  std::vector<char> required(g.subfamily_count(), 0);
  std::vector<Mask> forced{0, g.carrier()};
  for (const auto& f : psi) {
    auto code = g.code_of(f);
    if (!code || !g.admissible(*code)) return false;
    required[*code] = 1;
    for (Mask a : f.sets()) forced.push_back(a);
  }
  std::vector<FFamily> all = g.cov_families();
  for (std::uint32_t code = 0; code < g.subfamily_count(); ++code) {
    if (!g.admissible(code) || required[code]) continue;
    std::vector<FFamily> fewer;
    for (std::uint32_t c = 0; c < g.subfamily_count(); ++c)
      if (c != code && g.admissible(c)) fewer.push_back(g.family_at(c));
    if (check_axioms(Gts::make(g.universe(), g.carrier(), g.op(), fewer)).all()) return false;
  }
  for (Mask a : g.op().sets()) {
    if (std::ranges::find(forced, a) != forced.end()) continue;
    std::vector<Mask> rest;
    for (Mask b : g.op().sets())
      if (b != a) rest.push_back(b);
    if (check_axioms(Gts::with_full_cov(g.universe(), g.carrier(), FFamily(g.universe(), rest))).all()) return false;
  }
  return true;
}

SubspaceCheck subspace_gts(const Space& x, Mask y) {
  if (x.backend() != Backend::Finite) fail(Error::Kind::Usage, "gts subspaces need a finite space");
  if (y & ~x.carrier_mask()) fail(Error::Kind::Precondition, "subspace carrier leaves the space");
  const FiniteUniverse& u = x.universe();
  Gts whole = generate_gt(u, x.carrier_mask(), {x.smops()});

  // Φ ∩₂ Y for Φ = Cov_X, deduplicated by the set of traces each family yields.
  std::vector<Mask> y_points;
  for (int i = 0; i < u.size(); ++i)
    if ((y >> i) & 1U) y_points.push_back(Mask{1} << i);
  auto compress = [&](Mask s) {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < y_points.size(); ++i)
      if (s & y_points[i]) c |= std::uint32_t{1} << i;
    return c;
  };
  std::unordered_set<std::uint64_t> seen;
  std::vector<FFamily> traced_psi;
  for (std::uint32_t code = 0; code < whole.subfamily_count(); ++code) {
    if (!whole.admissible(code)) continue;
    FFamily t = family_trace(whole.family_at(code), y);
    std::uint64_t key = 0;
    for (Mask a : t.sets()) key |= std::uint64_t{1} << compress(a);
    if (seen.insert(key).second) traced_psi.push_back(std::move(t));
  }
  SubspaceCheck out{generate_gt(u, y, traced_psi), generate_gt(u, y, {family_trace(x.smops(), y)}), false};
  out.equal = out.traced == out.induced;
  return out;
}

std::string to_string(const Gts& g) {
  std::string s = "gts {universe " + std::to_string(g.universe().size()) + "; carrier " + format_mask(g.carrier()) +
                  "; op ";
  const auto& sets = g.op().sets();
  for (std::size_t i = 0; i < sets.size(); ++i) s += (i ? ", " : "") + format_mask(sets[i]);
  s += "; cov ";
  if (g.cov_is_full()) {
    s += "all";
  } else {
    bool first = true;
    for (const auto& f : g.cov_families()) {
      s += (first ? "" : ", ") + format_family(f);
      first = false;
    }
    if (first) s += "none";
  }
  return s + "}";
}

}  // namespace locus
