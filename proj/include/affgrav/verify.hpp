#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "affgrav/check.hpp"
#include "affgrav/expansion.hpp"

namespace affgrav {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct VerifyOptions {
  int order = 10;
  std::uint64_t seed = kDefaultSeed;
  int random_cases = 100;
  FrameOptions frame;
};

struct SuiteResult {
  std::string name;
  CheckLog log;
};

struct VerifyReport {
  int order = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool ok() const;
  /// First failure in suite order, or nullptr.
  const CheckFailure* first_failure() const;
};

/// Runs the seven invariant suites in this order: grading, bell, wronskian,
/// lemma4, series-lemmas, h-leading, theorems.
VerifyReport run_verification(const VerifyOptions& options);

/// Seed from AFFGRAV_SEED if set and valid, else the default.
std::uint64_t seed_from_env();

}  // namespace affgrav
