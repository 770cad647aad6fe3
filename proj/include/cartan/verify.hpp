#pragma once

// Randomized verification harness: every structural property of the
// library, evaluated on seeded samples. Sample i of property k draws from
// CounterRng(seed, k·2³² + i), so the report does not depend on how samples
// are scheduled across threads.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cartan {

struct VerifyConfig {
  long n = 4;
  long p = 2;
  std::uint64_t seed = 0;
  long samples = 500;
  bool parallel = true;
};

struct PropertyResult {
  std::string name;
  std::string module;
  long samples = 0;
  long failures = 0; // samples that raised an error
  double max_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<PropertyResult> properties;
  bool pass = false;
  double wall_seconds = 0.0;
};

/// Throws Error(InvalidArgument) unless 1 ≤ p < n and samples ≥ 1.
VerifyReport run_verification(const VerifyConfig& config);

/// Report as JSON; wall time is included only when `with_timing` is set so
/// that identical runs produce identical bytes.
nlohmann::json to_json(const VerifyReport& report, bool with_timing = false);

} // namespace cartan
