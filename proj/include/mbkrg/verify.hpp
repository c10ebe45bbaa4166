#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mbkrg {

enum class VerifyLevel { Quick, Full };

/// Where an expected value comes from.
enum class Basis {
  ClosedForm,  // a stated formula or case table
  Oracle,      // an independent computation in the check itself
  Recorded,    // no claim; the computed value is recorded as data
};

std::string to_string(Basis b);

struct CheckResult {
  std::string id;
  std::string criterion;  // "AC1" .. "AC9"
  Basis basis = Basis::ClosedForm;
  std::string expected;
  std::string actual;
  bool pass = false;
  double seconds = 0.0;
};

struct SuiteResult {
  VerifyLevel level = VerifyLevel::Quick;
  std::vector<CheckResult> checks;

  bool pass() const;
  /// Total runtime of the checks tagged with `criterion`.
  double seconds(const std::string& criterion) const;
  bool pass(const std::string& criterion) const;
  std::size_t count(const std::string& criterion) const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  int threads = 1;
  /// Swaps every closed-form family prediction for a wrong symbol, so the
  /// suite must fail. Used to check the harness itself.
  bool corrupt_predictor = false;
  std::uint64_t seed = 20241015;
  /// Called after each check finishes.
  std::function<void(const CheckResult&)> progress;
};

SuiteResult run_verification(const VerifyOptions& options);

nlohmann::json to_json(const SuiteResult& result);
std::string render_table(const SuiteResult& result);

}  // namespace mbkrg
