#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ggsp/frames.hpp"

namespace ggsp {

enum class StepKind { zero, independent, dependent };

enum class TraceLevel { none, steps };

/// Norm bookkeeping for one earlier vector g_j touched by a dependent step.
struct UpdateNorms {
  std::size_t index = 0;  // 1-based j
  double norm_before = 0.0;
  double norm_after = 0.0;
  double abs_inner = 0.0;  // |<g_j before, f_k>|
};

template <Scalar T>
struct StepTrace {
  std::size_t step = 0;  // 1-based k
  StepKind kind = StepKind::zero;
  std::vector<Vector<T>> snapshot;  // g_1..g_k after step k
  double input_norm = 0.0;          // ||f_k||
  std::vector<UpdateNorms> updates;  // dependent steps only
};

struct PassOptions {
  double dep_tol = kDefaultDependencyTol;
  TraceLevel trace = TraceLevel::none;
};

template <Scalar T>
struct PassResult {
  FrameSeq<T> frame;
  std::vector<StepTrace<T>> steps;  // empty unless trace == steps
};

/// One application of the generalized Gram-Schmidt map to F.
///
/// Step k, following the procedure line by line:
///   f_k zero (relative threshold)        -> g_k = 0
///   r = f_k - sum_{j<k} <f_k, g_j> g_j
///   ||r|| > dep_tol * max(1, ||f_k||)    -> g_k = r / ||r||
///   otherwise                            -> dependent_update on g_1..g_{k-1},
///                                           g_k = f_k / sqrt(1 + ||f_k||^2)
/// The output is a Parseval frame for span(F) of the same length, zero
/// exactly where F is zero. Throws NonFiniteError naming the step.
template <Scalar T>
PassResult<T> ggsp_pass(const FrameSeq<T>& frame, const PassOptions& options = {});

/// ggsp_pass without tracing.
template <Scalar T>
FrameSeq<T> phi(const FrameSeq<T>& frame, double dep_tol = kDefaultDependencyTol);

/// g_i + (1/||f||^2) (1/sqrt(1+||f||^2) - 1) <g_i, f> f for every g_i in the
/// prefix. Throws Error when f is zero.
template <Scalar T>
std::vector<Vector<T>> dependent_update(std::span<const Vector<T>> prefix, std::span<const T> f);

/// Predicted ||g_after||^2 = ||g||^2 - |<g, f>|^2 / (1 + ||f||^2).
template <Scalar T>
double norm_drop(std::span<const T> g_before, std::span<const T> f);

}  // namespace ggsp
