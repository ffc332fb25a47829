#include "ggsp/ggsp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ggsp/errors.hpp"

namespace ggsp {

namespace {

// (1/x)(1/sqrt(1+x) - 1) rewritten as -1 / (sqrt(1+x) (1 + sqrt(1+x)))
// to avoid cancellation for small x = ||f||^2.
double update_coefficient(double fnorm2) {
  const double root = std::sqrt(1.0 + fnorm2);
  return -1.0 / (root * (1.0 + root));
}

template <Scalar T>
void update_in_place(std::span<Vector<T>> prefix, std::span<const T> f, double fnorm2,
                     std::vector<UpdateNorms>* log) {
  const double coeff = update_coefficient(fnorm2);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    Vector<T>& g = prefix[i];
    const T ip = inner<T>(g, f);
    UpdateNorms entry;
    if (log != nullptr) {
      entry.index = i + 1;
      entry.norm_before = norm(g);
      entry.abs_inner = magnitude(ip);
    }
    axpy<T>(coeff * ip, f, g);
    if (log != nullptr) {
      entry.norm_after = norm(g);
      log->push_back(entry);
    }
  }
}

template <Scalar T>
void require_finite_step(const Vector<T>& g, std::size_t step) {
  for (const T& x : g) {
    if (!is_finite(x)) throw NonFiniteError("ggsp_pass: non-finite value at step " + std::to_string(step));
  }
}

}  // namespace

template <Scalar T>
PassResult<T> ggsp_pass(const FrameSeq<T>& frame, const PassOptions& options) {
  const std::size_t n = frame.size();
  const std::size_t d = frame.dim();
  const double zero_cut = zero_threshold(frame);
  const bool tracing = options.trace == TraceLevel::steps;

  std::vector<Vector<T>> g;
  g.reserve(n);
  std::vector<StepTrace<T>> steps;
  if (tracing) steps.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    const Vector<T>& f = frame[k];
    const double fnorm2 = norm_squared(f);
    const double fnorm = std::sqrt(fnorm2);
    if (!std::isfinite(fnorm2)) {
      throw NonFiniteError("ggsp_pass: norm of input vector overflows at step " + std::to_string(k + 1));
    }
    StepTrace<T> trace;
    trace.step = k + 1;
    trace.input_norm = fnorm;

    if (fnorm <= zero_cut) {
      trace.kind = StepKind::zero;
      g.emplace_back(d, T{});
    } else {
      Vector<T> r = f;
      for (const Vector<T>& gj : g) axpy<T>(-inner(f, gj), gj, r);
      const double rnorm = norm(r);
      if (rnorm > options.dep_tol * std::max(1.0, fnorm)) {
        trace.kind = StepKind::independent;
        for (T& x : r) x /= rnorm;
        g.push_back(std::move(r));
      } else {
        trace.kind = StepKind::dependent;
        update_in_place<T>(g, f, fnorm2, tracing ? &trace.updates : nullptr);
        for (const Vector<T>& gj : g) require_finite_step(gj, k + 1);
        g.push_back(scaled<T>(f, 1.0 / std::sqrt(1.0 + fnorm2)));
      }
    }
    require_finite_step(g.back(), k + 1);

    if (tracing) {
      trace.snapshot = g;
      steps.push_back(std::move(trace));
    }
  }
  return {FrameSeq<T>(d, std::move(g)), std::move(steps)};
}

template <Scalar T>
FrameSeq<T> phi(const FrameSeq<T>& frame, double dep_tol) {
  return ggsp_pass(frame, PassOptions{dep_tol, TraceLevel::none}).frame;
}

template <Scalar T>
std::vector<Vector<T>> dependent_update(std::span<const Vector<T>> prefix, std::span<const T> f) {
  const double fnorm2 = norm_squared<T>(f);
  if (fnorm2 == 0.0) throw Error("dependent_update: f_k is zero; use the zero branch");
  for (const Vector<T>& g : prefix) {
    if (g.size() != f.size()) throw DimensionError("dependent_update: dimension mismatch");
  }
  std::vector<Vector<T>> out(prefix.begin(), prefix.end());
  update_in_place<T>(out, f, fnorm2, nullptr);
  return out;
}

template <Scalar T>
double norm_drop(std::span<const T> g_before, std::span<const T> f) {
  const double fnorm2 = norm_squared<T>(f);
  return norm_squared<T>(g_before) - abs2(inner<T>(g_before, f)) / (1.0 + fnorm2);
}

#define GGSP_INSTANTIATE(T)                                                                        \
  template PassResult<T> ggsp_pass<T>(const FrameSeq<T>&, const PassOptions&);                     \
  template FrameSeq<T> phi<T>(const FrameSeq<T>&, double);                                         \
  template std::vector<Vector<T>> dependent_update<T>(std::span<const Vector<T>>, std::span<const T>); \
  template double norm_drop<T>(std::span<const T>, std::span<const T>);

GGSP_INSTANTIATE(double)
GGSP_INSTANTIATE(cplx)

#undef GGSP_INSTANTIATE

}  // namespace ggsp
