#include "ggsp/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ggsp/errors.hpp"

namespace ggsp {

namespace {

template <Scalar T>
std::vector<double> vector_norms(const FrameSeq<T>& frame) {
  std::vector<double> out;
  out.reserve(frame.size());
  for (const Vector<T>& g : frame) out.push_back(norm(g));
  return out;
}

double scaled_violation(double amount, double scale) {
  return std::max(amount, 0.0) / std::max(1.0, scale);
}

// The vectors fed into pass m (0-based pass index), i.e. G_m.
template <Scalar T>
const std::vector<Vector<T>>& pass_input(const IterationTrace<T>& trace, std::size_t pass) {
  if (pass == 0) return trace.initial().vectors();
  return trace.steps[pass - 1].back().snapshot;
}

}  // namespace

template <Scalar T>
IterationTrace<T> iterate(const FrameSeq<T>& frame, const IterateOptions& options) {
  if (options.max_iter < 1) throw InputError("iterate: max_iter must be at least 1");
  if (options.snapshot_stride < 1) throw InputError("iterate: snapshot_stride must be at least 1");

  IterationTrace<T> trace;
  trace.dependent_indices = dependency_profile(frame, options.dep_tol);
  trace.input_zeros = zero_indices(frame);
  trace.frames.push_back({0, frame});
  trace.norms.push_back(vector_norms(frame));

  const PassOptions pass_options{options.dep_tol, options.trace};
  FrameSeq<T> current = frame;
  for (std::size_t m = 1; m <= options.max_iter; ++m) {
    PassResult<T> result = [&] {
      try {
        return ggsp_pass(current, pass_options);
      } catch (const NonFiniteError& e) {
        throw NonFiniteError("iteration " + std::to_string(m) + ": " + e.what());
      }
    }();
    const double delta = l2_distance(result.frame, current);
    current = std::move(result.frame);

    trace.deltas.push_back(delta);
    trace.norms.push_back(vector_norms(current));
    if (options.trace == TraceLevel::steps) trace.steps.push_back(std::move(result.steps));
    trace.iterations_run = m;
    trace.stationary = delta <= options.eps_delta;

    const bool last = trace.stationary || m == options.max_iter;
    if (last || m % options.snapshot_stride == 0) trace.frames.push_back({m, current});
    if (last) break;
  }
  return trace;
}

template <Scalar T>
Vector<T> closed_form_last_dependent(std::span<const T> f, std::size_t m) {
  return scaled<T>(f, 1.0 / std::sqrt(1.0 + static_cast<double>(m) * norm_squared<T>(f)));
}

template <Scalar T>
StabilizationCheck check_stabilized_last(const FrameSeq<T>& frame, const IterationTrace<T>& trace, double tol,
                                         double dep_tol) {
  StabilizationCheck out;
  const std::size_t n = frame.size();
  const Vector<T>& last = frame[n - 1];
  const double last_norm = norm(last);
  if (last_norm <= zero_threshold(frame)) return out;

  Vector<T> residual = last;
  if (n > 1) {
    const std::vector<Vector<T>> head(frame.vectors().begin(), frame.vectors().end() - 1);
    const auto basis = span_basis(FrameSeq<T>(frame.dim(), head), dep_tol);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector<T>& q : basis) axpy<T>(-inner(residual, q), q, residual);
    }
  }
  const double rnorm = norm(residual);
  if (rnorm <= dep_tol * last_norm) return out;
  for (T& x : residual) x /= rnorm;

  out.applicable = true;
  for (const Snapshot<T>& snap : trace.frames) {
    if (snap.iteration == 0) continue;
    out.residual = std::max(out.residual, distance<T>(snap.frame[n - 1], residual));
  }
  out.stabilized = out.residual <= tol;
  return out;
}

template <Scalar T>
RecurrenceReport validate_recurrences(const IterationTrace<T>& trace) {
  if (trace.steps.size() != trace.iterations_run || trace.iterations_run == 0) {
    throw Error("validate_recurrences: trace lacks per-step data (run with step tracing)");
  }
  RecurrenceReport report;
  const FrameSeq<T>& g0 = trace.initial();

  for (std::size_t pass = 0; pass < trace.steps.size(); ++pass) {
    const std::size_t m = pass + 1;
    const auto& steps = trace.steps[pass];
    const auto& prev = pass_input(trace, pass);      // G_{m-1}
    const auto& next = steps.back().snapshot;        // G_m
    const std::vector<double>& prev_norms = trace.norms[pass];

    std::vector<std::size_t> dep;  // k_1 < ... < k_s, 1-based
    for (const auto& st : steps)
      if (st.kind == StepKind::dependent) dep.push_back(st.step);
    const std::size_t s = dep.size();
    ++report.iterations_checked;
    if (s == 0) continue;

    auto prev_sq = [&](std::size_t k) { return prev_norms[k - 1] * prev_norms[k - 1]; };

    // One-step relations at every dependent step k_r for every earlier k_l.
    for (std::size_t r = 0; r < s; ++r) {
      const std::size_t kr = dep[r];
      const Vector<T>& f = prev[kr - 1];
      const double fsq = norm_squared(f);
      const auto& before_snap = steps[kr - 2].snapshot;
      const auto& after_snap = steps[kr - 1].snapshot;
      for (std::size_t l = 0; l < r; ++l) {
        const std::size_t kl = dep[l];
        const Vector<T>& before = before_snap[kl - 1];
        const double before_sq = norm_squared(before);
        const double after_sq = norm_squared(after_snap[kl - 1]);
        const double predicted = before_sq - abs2(inner(before, f)) / (1.0 + fsq);
        const double scale = std::max(before_sq, after_sq);
        report.norm_recurrence =
            std::max(report.norm_recurrence, scaled_violation(std::abs(after_sq - predicted), scale));
        report.cauchy_schwarz =
            std::max(report.cauchy_schwarz, scaled_violation(before_sq / (1.0 + fsq) - after_sq, scale));
        ++report.pairs_checked;
      }
    }

    // Whole-pass bounds in terms of G_{m-1}.
    for (std::size_t l = 0; l < s; ++l) {
      const std::size_t kl = dep[l];
      const double x = prev_sq(kl);
      const double now = norm_squared(next[kl - 1]);
      const double single = x / (1.0 + x);
      double product = single;
      for (std::size_t r = l + 1; r < s; ++r) product /= 1.0 + prev_sq(dep[r]);
      const double scale = std::max(now, single);
      report.accumulated_lower = std::max(report.accumulated_lower, scaled_violation(product - now, scale));
      report.upper_bound = std::max(report.upper_bound, scaled_violation(now - single, scale));
    }
    if (s >= 2) {
      const std::size_t k = dep[s - 2];
      const double x = prev_sq(k);
      const double eps = prev_sq(dep[s - 1]);
      const double now = norm_squared(next[k - 1]);
      const double bound = x / (1.0 + x) / (1.0 + eps);
      report.epsilon_lower =
          std::max(report.epsilon_lower, scaled_violation(bound - now, std::max(now, bound)));
    }

    // Last dependent index against its closed form, measured from G_0.
    const std::size_t ks = dep.back();
    const Vector<T> predicted = closed_form_last_dependent<T>(g0[ks - 1], m);
    const double err = distance<T>(next[ks - 1], predicted);
    report.closed_form = std::max(report.closed_form, err / (1.0 + 1e-3 * static_cast<double>(m)));
  }
  return report;
}

template <Scalar T>
LimitReport classify_limit(const IterationTrace<T>& trace, std::optional<double> delta_zero,
                           std::optional<double> delta_onb) {
  LimitReport report;
  const FrameSeq<T>& last = trace.final_frame();
  const std::size_t m = std::max<std::size_t>(trace.iterations_run, 1);
  report.iterations_run = trace.iterations_run;
  report.delta_zero = delta_zero.value_or(trace.stationary ? zero_threshold(last)
                                                           : 2.0 / std::sqrt(static_cast<double>(m)));
  report.delta_onb = delta_onb.value_or(1e-2);

  for (std::size_t k = 1; k <= last.size(); ++k) {
    if (norm(last[k - 1]) <= report.delta_zero) {
      report.zero_indices.push_back(k);
    } else {
      report.surviving_indices.push_back(k);
    }
  }
  report.onb_residual = orthonormality_residual(last, report.surviving_indices);
  report.converged = report.onb_residual <= report.delta_onb;

  std::vector<std::size_t> predicted = trace.dependent_indices;
  predicted.insert(predicted.end(), trace.input_zeros.begin(), trace.input_zeros.end());
  std::sort(predicted.begin(), predicted.end());
  report.predicted_zero_indices = predicted;
  report.prediction_match = predicted == report.zero_indices;
  return report;
}

template <Scalar T>
bool is_fixed_point(const FrameSeq<T>& frame, double tol, double dep_tol) {
  return l2_distance(phi(frame, dep_tol), frame) <= tol;
}

template <Scalar T>
bool is_zero_extended_orthonormal(const FrameSeq<T>& frame, double tol) {
  std::vector<std::size_t> nonzero;
  const double cut = zero_threshold(frame);
  for (std::size_t k = 1; k <= frame.size(); ++k) {
    if (norm(frame[k - 1]) > cut) nonzero.push_back(k);
  }
  return orthonormality_residual(frame, nonzero) <= tol;
}

#define GGSP_INSTANTIATE(T)                                                                           \
  template IterationTrace<T> iterate<T>(const FrameSeq<T>&, const IterateOptions&);                   \
  template Vector<T> closed_form_last_dependent<T>(std::span<const T>, std::size_t);                  \
  template StabilizationCheck check_stabilized_last<T>(const FrameSeq<T>&, const IterationTrace<T>&,  \
                                                       double, double);                               \
  template RecurrenceReport validate_recurrences<T>(const IterationTrace<T>&);                        \
  template LimitReport classify_limit<T>(const IterationTrace<T>&, std::optional<double>,             \
                                         std::optional<double>);                                      \
  template bool is_fixed_point<T>(const FrameSeq<T>&, double, double);                                \
  template bool is_zero_extended_orthonormal<T>(const FrameSeq<T>&, double);

GGSP_INSTANTIATE(double)
GGSP_INSTANTIATE(cplx)

#undef GGSP_INSTANTIATE

}  // namespace ggsp
