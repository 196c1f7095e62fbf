#pragma once

// Paracompactness, the Lindelöf property, tautness, regularity and
// connectedness, with constructive passages between covers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locus/families.hpp"
#include "locus/spaces.hpp"

namespace locus {

struct CoverCheck {
  bool holds = false;
  bool members_are_smops = false;
  bool covers = false;
  /// Locally finite (paracompact witness) or admissible (Lindelöf witness).
  bool structure = false;
  std::optional<SetValue> witness;
  std::string detail;
};

/// Smop members, locally finite, union = carrier.
CoverCheck verify_paracompact_witness(const Space& x, const Family& f);
/// Smop members, admissible, union = carrier. Presentations are countable.
CoverCheck verify_lindelof_witness(const Space& x, const Family& f);

enum class Outcome { Done, Disconnected, Inconclusive };
std::string outcome_name(Outcome o);

struct ChainResult {
  Outcome outcome = Outcome::Inconclusive;
  /// M_0, M_1, ... as computed.
  std::vector<SetValue> prefix;
  /// Verified Lindelöf witness (Done).
  std::optional<Family> cover;
  /// Two disjoint nonempty open sets covering the carrier (Disconnected).
  std::optional<std::pair<SetValue, SetValue>> disconnection;
  std::string detail;
};

/// M_0 = seed, M_{n+1} = union of the members of k meeting M_n. Stops when
/// the chain reaches the carrier, stabilizes below it (a disconnection), or
/// is recognized as an increasing chain of translate unions.
ChainResult lindelof_from_paracompact(const Space& x, const Family& k, const SetValue& seed, int budget = 64);

struct RefinementResult {
  Outcome outcome = Outcome::Inconclusive;
  /// Verified locally finite smop cover (Done).
  std::optional<Family> cover;
  /// The increasing chain after re-indexing so that wcl(M_n) ⊆ M_{n+1}.
  std::vector<SetValue> reindexed;
  /// W_1, W_2, ... as computed (a prefix for infinite chains). The cover may
  /// present late W_n split into parts.
  std::vector<SetValue> pieces;
  std::string detail;
};

/// W_1 = M_1, W_2 = M_2, W_{n+2} = M_{n+2} minus wcl(M_n). The chain is a
/// finite increasing list or a single chain atom; x must be strongly taut.
RefinementResult paracompact_from_lindelof(const Space& x, const Family& chain, int budget = 64);

/// {L ∩ K : K in k, L in a finite part of l covering K}, verified locally
/// finite. k must be a locally finite smop cover and l an admissible cover.
RefinementResult locally_finite_refinement(const Space& x, const Family& k, const Family& l);

/// The subfamily of l formed by finite parts covering the members of c,
/// verified to be an admissible cover.
RefinementResult countable_subcover(const Space& x, const Family& c, const Family& l);

struct TautReport {
  bool taut = false;
  bool strongly_taut = false;
  /// A smop whose weak closure is not small (or not closed).
  std::optional<SetValue> witness;
  int samples_checked = 0;
  std::string detail;
};

TautReport check_taut(const Space& x, int samples = 100, std::uint64_t seed = 1);
bool is_taut(const Space& x);
bool is_strongly_taut(const Space& x);

struct Separation {
  SetValue u, v;
};

/// Disjoint open U ∋ p and V ⊇ f, or nullopt if none exists (finite backend).
/// Precondition: f closed and p ∉ f.
std::optional<Separation> separate(const Space& x, const SetValue& point, const SetValue& f);

struct RegularityReport {
  Verdict verdict = Verdict::Inconclusive;
  bool singletons_closed = false;
  std::string detail;
};

/// Finite: decided by enumeration. Line: singletons are closed and every
/// representable closed set is separated from outside points by the gap
/// construction of `separate`; cross-checked on sampled pairs.
RegularityReport check_regular(const Space& x, int samples = 100, std::uint64_t seed = 1);

struct ConnectednessReport {
  /// Finite: exact. Line: true only when a splitting was found.
  bool decided = false;
  bool connected = false;
  std::optional<std::pair<SetValue, SetValue>> witness;
  std::string detail;
};

ConnectednessReport find_disconnection(const Space& x);

}  // namespace locus
