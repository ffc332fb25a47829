#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ggsp/frames.hpp"
#include "ggsp/ggsp.hpp"

namespace ggsp {

struct IterateOptions {
  std::size_t max_iter = 1000;
  double eps_delta = 1e-12;         // stop once ||G_{m+1} - G_m|| <= eps_delta
  std::size_t snapshot_stride = 1;  // G_0 and the final iterate are always kept
  TraceLevel trace = TraceLevel::none;
  double dep_tol = kDefaultDependencyTol;
};

template <Scalar T>
struct Snapshot {
  std::size_t iteration = 0;
  FrameSeq<T> frame;
};

/// Record of G_0, G_1 = Phi(G_0), ..., G_M.
template <Scalar T>
struct IterationTrace {
  std::vector<Snapshot<T>> frames;
  std::vector<std::vector<double>> norms;  // norms[m][i] = ||g_i^(m)||, m = 0..M
  std::vector<double> deltas;              // deltas[m] = ||G_{m+1} - G_m||
  std::vector<std::size_t> dependent_indices;  // dependency_profile(G_0), 1-based
  std::vector<std::size_t> input_zeros;        // zero_indices(G_0), 1-based
  // steps[m] holds the per-step trace of the pass producing G_{m+1};
  // populated only with TraceLevel::steps.
  std::vector<std::vector<StepTrace<T>>> steps;
  std::size_t iterations_run = 0;
  bool stationary = false;  // stopped on eps_delta rather than max_iter

  const FrameSeq<T>& initial() const { return frames.front().frame; }
  const FrameSeq<T>& final_frame() const { return frames.back().frame; }
};

/// Applies Phi repeatedly. Throws NonFiniteError naming the iteration.
template <Scalar T>
IterationTrace<T> iterate(const FrameSeq<T>& frame, const IterateOptions& options = {});

/// Predicted m-th iterate of the last dependent vector: f / sqrt(1 + m ||f||^2).
template <Scalar T>
Vector<T> closed_form_last_dependent(std::span<const T> f, std::size_t m);

struct StabilizationCheck {
  bool applicable = false;  // false when f_n lies in span{f_1..f_{n-1}} or is zero
  bool stabilized = false;
  double residual = 0.0;  // max over recorded m >= 1 of ||g_n^(m) - (I-P) f_n / ||(I-P) f_n|| ||
};

/// Last-vector stabilization for an independent last vector, checked on
/// every recorded snapshot with m >= 1.
template <Scalar T>
StabilizationCheck check_stabilized_last(const FrameSeq<T>& frame, const IterationTrace<T>& trace,
                                         double tol = 1e-10, double dep_tol = kDefaultDependencyTol);

/// Maximum violation of each norm relation over a step-traced run.
/// Violations are scaled by max(1, magnitude of the terms involved).
struct RecurrenceReport {
  double norm_recurrence = 0.0;  // |measured - predicted| for the one-step norm drop
  double cauchy_schwarz = 0.0;   // one-step floor ||after||^2 >= ||before||^2 / (1 + ||f||^2)
  double accumulated_lower = 0.0;  // product lower bound over the later dependent steps
  double upper_bound = 0.0;        // ||g^(m)||^2 <= x / (1 + x), x = ||g^(m-1)||^2
  double epsilon_lower = 0.0;      // lower bound for k_{s-1} with eps = ||g_{k_s}^(m-1)||^2
  double closed_form = 0.0;        // last dependent vector, scaled by 1 / (1 + 1e-3 m)
  std::size_t pairs_checked = 0;
  std::size_t iterations_checked = 0;

  bool passed(double inequality_tol = 1e-12, double equality_tol = 1e-12,
              double closed_form_tol = 1e-10) const {
    return norm_recurrence <= equality_tol && cauchy_schwarz <= inequality_tol &&
           accumulated_lower <= inequality_tol && upper_bound <= inequality_tol &&
           epsilon_lower <= inequality_tol && closed_form <= closed_form_tol;
  }
};

/// Throws Error when the trace was recorded without per-step data.
template <Scalar T>
RecurrenceReport validate_recurrences(const IterationTrace<T>& trace);

struct LimitReport {
  bool converged = false;  // surviving set near-orthonormal; empirical only
  std::size_t iterations_run = 0;
  std::vector<std::size_t> zero_indices;
  std::vector<std::size_t> surviving_indices;
  std::vector<std::size_t> predicted_zero_indices;
  double onb_residual = 0.0;
  bool prediction_match = false;
  double delta_zero = 0.0;
  double delta_onb = 0.0;
};

/// Partitions the final iterate into near-zero and surviving vectors.
/// delta_zero defaults to 2 / sqrt(M); a run that stopped on stationarity
/// uses the relative zero threshold instead since its final frame is a
/// fixed point. delta_onb defaults to 1e-2.
template <Scalar T>
LimitReport classify_limit(const IterationTrace<T>& trace, std::optional<double> delta_zero = std::nullopt,
                           std::optional<double> delta_onb = std::nullopt);

/// ||Phi(F) - F|| <= tol.
template <Scalar T>
bool is_fixed_point(const FrameSeq<T>& frame, double tol = 1e-10, double dep_tol = kDefaultDependencyTol);

/// Structural counterpart of is_fixed_point: nonzero vectors orthonormal within tol.
template <Scalar T>
bool is_zero_extended_orthonormal(const FrameSeq<T>& frame, double tol = 1e-10);

}  // namespace ggsp
