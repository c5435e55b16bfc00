#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rflight {

struct VerifyCase {
  std::string id;
  nlohmann::json inputs;
  nlohmann::json expected;
  nlohmann::json actual;
  double tol = 0.0;
  bool pass = false;
  double ms = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  std::uint64_t mc_samples = 1000000;
  // CSV `index,zero` replacing the computed zeros of j_0 in the zero checks.
  std::optional<std::string> zeros_file;
};

struct VerificationReport {
  std::string suite;
  std::string convention;
  std::uint64_t seed = 0;
  std::vector<VerifyCase> cases;

  bool pass() const;
  /// Cases sorted by id. Timing fields are left out when with_timing is false.
  nlohmann::json to_json(bool with_timing = true) const;
};

// Case groups, one per acceptance area.
std::vector<VerifyCase> zero_cases(const VerifyOptions& opts);
std::vector<VerifyCase> identity_cases(const VerifyOptions& opts);
std::vector<VerifyCase> orthogonality_cases(const VerifyOptions& opts);
std::vector<VerifyCase> special_value_cases(const VerifyOptions& opts);
std::vector<VerifyCase> classical_kernel_cases(const VerifyOptions& opts);
std::vector<VerifyCase> completeness_like_cases(const VerifyOptions& opts);
std::vector<VerifyCase> kernel_property_cases(const VerifyOptions& opts);
std::vector<VerifyCase> flight_route_cases(const VerifyOptions& opts);
std::vector<VerifyCase> flight_property_cases(const VerifyOptions& opts);
std::vector<VerifyCase> monte_carlo_cases(const VerifyOptions& opts);
std::vector<VerifyCase> gap_cases(const VerifyOptions& opts);
std::vector<VerifyCase> extended_route_cases(const VerifyOptions& opts);

/// suite is one of specfun, kernels, flights, extended, all.
VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts);

bool is_suite_name(const std::string& suite);

}  // namespace rflight
