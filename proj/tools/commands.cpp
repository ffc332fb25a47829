#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "ggsp/errors.hpp"
#include "ggsp/generators.hpp"
#include "ggsp/io.hpp"
#include "ggsp/iterate.hpp"

namespace ggsp::cli {

namespace {

constexpr double kPassParsevalTol = 1e-10;
constexpr double kTraceParsevalTol = 1e-9;

io::AnyFrame load_input(const RunConfig& config) {
  if (config.example && config.input) throw InputError("use either --input or --example, not both");
  if (config.example) return builtin_example(*config.example);
  if (config.input) return io::load_frame(*config.input);
  throw InputError("no input: pass --input PATH or --example {fig1,fig2,fig3}");
}

void emit(const RunConfig& config, std::ostream& out, const std::string& document) {
  if (!config.output) {
    out << document;
    return;
  }
  std::ofstream file(*config.output, std::ios::binary);
  if (!file) throw InputError("cannot write '" + *config.output + "'");
  file << document;
}

std::string format_indices(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

template <Scalar T>
int run_frame(const RunConfig& config, const FrameSeq<T>& frame, std::ostream& out, std::ostream& err) {
  const FrameSeq<T> g = phi(frame, config.dep_tol);
  const ParsevalCheck check = is_parseval(g, kPassParsevalTol, config.dep_tol);
  const FrameBounds bounds = frame_bounds(g);

  if (config.format == "csv") {
    std::ostringstream csv;
    io::write_frame_csv(csv, g);
    emit(config, out, csv.str());
  } else {
    nlohmann::json doc = io::frame_to_json(g);
    doc["report"] = {{"parseval", check.parseval},
                     {"parseval_residual", check.residual},
                     {"bounds", {{"lower", bounds.lower}, {"upper", bounds.upper}}},
                     {"squared_norm", squared_l2_norm(g)},
                     {"dependent_indices", dependency_profile(frame, config.dep_tol)},
                     {"zero_indices", zero_indices(frame)}};
    emit(config, out, doc.dump(2) + "\n");
  }
  err << "parseval_residual " << io::format_double(check.residual) << " bounds [" << io::format_double(bounds.lower)
      << ", " << io::format_double(bounds.upper) << "]\n";
  if (!check.parseval) {
    err << "verification failed: output is not Parseval for its span within " << kPassParsevalTol << "\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

template <Scalar T>
int iterate_frame(const RunConfig& config, const FrameSeq<T>& frame, std::ostream& out, std::ostream& err) {
  IterateOptions options;
  options.max_iter = config.max_iter;
  options.eps_delta = config.eps_delta;
  options.snapshot_stride = config.snapshot_stride;
  options.trace = config.trace;
  options.dep_tol = config.dep_tol;

  const IterationTrace<T> trace = iterate(frame, options);
  const LimitReport limit = classify_limit(trace, config.delta_zero, config.delta_onb);

  bool ok = true;
  double worst_parseval = 0.0;
  for (const Snapshot<T>& s : trace.frames) {
    if (s.iteration == 0) continue;
    worst_parseval = std::max(worst_parseval, is_parseval(s.frame, kTraceParsevalTol, config.dep_tol).residual);
  }
  ok = worst_parseval <= kTraceParsevalTol;

  std::optional<RecurrenceReport> recurrences;
  if (config.trace == TraceLevel::steps) {
    recurrences = validate_recurrences(trace);
    ok = ok && recurrences->passed();
  }

  if (config.format == "csv") {
    std::ostringstream csv;
    io::write_trace_csv(csv, trace);
    emit(config, out, csv.str());
  } else {
    nlohmann::json doc = io::trace_to_json(trace, options);
    doc["limit_report"] = io::limit_report_to_json(limit);
    doc["max_parseval_residual"] = worst_parseval;
    if (recurrences) doc["recurrences"] = io::recurrence_report_to_json(*recurrences);
    emit(config, out, doc.dump(2) + "\n");
  }

  err << "iterations_run " << trace.iterations_run << (trace.stationary ? " (empirically stationary)" : "") << "\n"
      << "zero_indices " << format_indices(limit.zero_indices) << " predicted "
      << format_indices(limit.predicted_zero_indices) << (limit.prediction_match ? " match" : " MISMATCH") << "\n"
      << "surviving " << format_indices(limit.surviving_indices) << " onb_residual "
      << io::format_double(limit.onb_residual) << (limit.converged ? " (near-orthonormal)" : "") << "\n"
      << "max_parseval_residual " << io::format_double(worst_parseval) << "\n";
  if (recurrences) err << "recurrences " << (recurrences->passed() ? "pass" : "FAIL") << "\n";
  if (!ok) {
    err << "verification failed\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NonFiniteError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

}  // namespace

void validate(const RunConfig& config) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(name) + " must be positive");
  };
  positive(config.dep_tol, "--dep-tol");
  positive(config.eps_delta, "--eps-delta");
  if (config.delta_zero) positive(*config.delta_zero, "--delta-zero");
  if (config.delta_onb) positive(*config.delta_onb, "--delta-onb");
  if (config.max_iter < 1) throw InputError("--max-iter must be at least 1");
  if (config.snapshot_stride < 1) throw InputError("--snapshot-stride must be at least 1");
  if (config.format != "json" && config.format != "csv") throw InputError("--format must be json or csv");
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    return std::visit([&](const auto& frame) { return run_frame(config, frame, out, err); }, load_input(config));
  });
}

int cmd_iterate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    return std::visit([&](const auto& frame) { return iterate_frame(config, frame, out, err); },
                      load_input(config));
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const auto results = run_verification(config);
    bool all = true;
    out << "seed " << config.seed << ", random frames " << config.random_frames << ", dep_tol "
        << io::format_double(config.dep_tol) << "\n";
    out << std::left << std::setw(34) << "check" << std::setw(8) << "result" << std::setw(26) << "max_residual"
        << "tolerance\n";
    for (const CheckResult& r : results) {
      all = all && r.passed;
      out << std::left << std::setw(34) << r.name << std::setw(8) << (r.passed ? "PASS" : "FAIL") << std::setw(26)
          << io::format_double(r.max_residual) << io::format_double(r.tolerance);
      if (!r.detail.empty()) out << "  " << r.detail;
      out << "\n";
    }
    out << (all ? "all checks passed\n" : "verification FAILED\n");
    return all ? kSuccess : kVerificationFailure;
  });
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Generalized Gram-Schmidt Parseval frames: single passes, iteration, verification"};
  app.require_subcommand(1);
  RunConfig config;
  std::string trace = "none";
  std::string example;
  std::string input;
  std::string output;
  std::optional<double> delta_zero;
  std::optional<double> delta_onb;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Frame JSON file");
    cmd->add_option("--example", example, "Builtin frame")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    cmd->add_option("--max-iter", config.max_iter, "Maximum number of iterations");
    cmd->add_option("--snapshot-stride", config.snapshot_stride, "Keep every N-th iterate");
    cmd->add_option("--trace", trace, "Per-step tracing")->check(CLI::IsMember({"none", "steps"}));
    cmd->add_option("--dep-tol", config.dep_tol, "Relative dependency tolerance");
    cmd->add_option("--eps-delta", config.eps_delta, "Stationarity threshold on ||G_{m+1} - G_m||");
    cmd->add_option("--delta-zero", delta_zero, "Zero-vector threshold for the limit (default 2/sqrt(M))");
    cmd->add_option("--delta-onb", delta_onb, "Orthonormality threshold for the limit (default 1e-2)");
    cmd->add_option("--output", output, "Output path (default stdout)");
    cmd->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", config.seed, "Random seed for verify");
    cmd->add_option("--random-frames", config.random_frames, "Random frames per verify check");
  };
  CLI::App* run = app.add_subcommand("run", "Apply one GGSP pass and verify the Parseval property");
  CLI::App* iter = app.add_subcommand("iterate", "Iterate GGSP and classify the limit");
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant battery");
  for (CLI::App* cmd : {run, iter, verify}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (!input.empty()) config.input = input;
  if (!example.empty()) config.example = example;
  if (!output.empty()) config.output = output;
  config.delta_zero = delta_zero;
  config.delta_onb = delta_onb;
  config.trace = trace == "steps" ? TraceLevel::steps : TraceLevel::none;

  if (run->parsed()) return cmd_run(config, std::cout, std::cerr);
  if (iter->parsed()) return cmd_iterate(config, std::cout, std::cerr);
  return cmd_verify(config, std::cout, std::cerr);
}

}  // namespace ggsp::cli
