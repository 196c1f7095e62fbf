#pragma once

// Executable instances of the structural results: each id runs a fixed set
// of instances plus seeded random ones and reports per-instance lines.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locus/spaces.hpp"

namespace locus {

/// The five equivalent descriptions of smallness, evaluated separately.
///   [0] the carrier is a smop
///   [1] every set is small (carrier small; sampled sets small)
///   [2] smops coincide with open sets
///   [3] every admissible family is essentially finite
///   [4] every admissible cover of the carrier is essentially finite
/// On the line, [3] and [4] are searched over a fixed catalog of
/// presentations (translate covers with one-sided anchors, growing chains).
struct SmallnessConditions {
  std::array<bool, 5> holds{};
  std::array<std::string, 5> witness;

  bool agree() const;
};

SmallnessConditions smallness_conditions(const Space& x, int samples = 100, std::uint64_t seed = 1);

struct VerifyOptions {
  /// Random instances per randomized part (finite spaces, maps, atlases).
  int iters = 100;
  /// Sampled sets per line-space predicate comparison.
  int samples = 200;
  std::uint64_t seed = 1;
};

struct TheoremReport {
  std::string id;
  std::string anchor;
  bool holds = true;
  int instances = 0;
  std::vector<std::string> lines;
  /// First failing instance, when holds is false.
  std::optional<std::string> counterwitness;
};

const std::vector<std::string>& theorem_ids();
std::string theorem_anchor(const std::string& id);

/// Throws Usage on an unknown id.
TheoremReport verify_theorem(const std::string& id, const VerifyOptions& options = {});
std::vector<TheoremReport> verify_all(const VerifyOptions& options = {});

}  // namespace locus
