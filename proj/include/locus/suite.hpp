#pragma once

// Seeded randomized self-check: core operations against direct definitions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locus/spaces.hpp"

namespace locus {

struct SuiteCheck {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::optional<std::string> first_failure;
};

struct SuiteReport {
  Backend backend = Backend::Finite;
  int iters = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;

  bool passed() const;
};

SuiteReport random_suite(Backend backend, int iters, std::uint64_t seed);

}  // namespace locus
