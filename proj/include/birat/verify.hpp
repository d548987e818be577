#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace birat {

struct CheckResult {
  std::string name;
  /// Outcome matched the expectation. For expected-fail checks this means the
  /// violation was observed.
  bool passed = false;
  bool expected_fail = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  /// Overrides the residual threshold of the symplectic and roundtrip checks.
  std::optional<double> tol;
};

inline constexpr std::string_view kSuiteNames[] = {"conservation", "symplectic", "roundtrip",
                                                   "convergence", "multipliers", "all"};

bool is_suite(std::string_view name);

/// Runs one suite (or "all"); throws InvalidArgument for unknown names.
SuiteReport run_suite(std::string_view name, const VerifyOptions& opts = {});

nlohmann::json to_json(const SuiteReport& r);

}  // namespace birat
