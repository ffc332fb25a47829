#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ggsp/ggsp.hpp"

namespace ggsp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInputError = 2,
};

struct RunConfig {
  std::optional<std::string> input;
  std::optional<std::string> example;
  double dep_tol = kDefaultDependencyTol;
  double eps_delta = 1e-12;
  std::optional<double> delta_zero;
  std::optional<double> delta_onb;
  std::size_t max_iter = 1000;
  std::size_t snapshot_stride = 1;
  TraceLevel trace = TraceLevel::none;
  std::optional<std::string> output;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::size_t random_frames = 50;
};

/// Throws InputError for non-positive tolerances, max_iter < 1 and the like.
void validate(const RunConfig& config);

// Each command writes its document to config.output (or `out` when unset)
// and human-readable diagnostics to `err`.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_iterate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// The invariant battery behind `verify`.
std::vector<CheckResult> run_verification(const RunConfig& config);

/// argv front end; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace ggsp::cli
