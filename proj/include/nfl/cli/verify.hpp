#pragma once

// Invariant suites run by the verify command.

#include <cstdint>
#include <string>
#include <vector>

namespace nfl::cli {

struct VerifyOptions {
  /// Multiplies the sigma handed to the bounds in the dominance suite; values
  /// below 1 inject a fault that the suite must detect.
  double sigma_scale = 1.0;
  std::uint64_t seed = 7;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// blowup, dominance, duality, gradient, numerics.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

}  // namespace nfl::cli
