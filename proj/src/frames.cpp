#include "ggsp/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ggsp/errors.hpp"

namespace ggsp {

namespace {

template <Scalar T>
struct SpanScan {
  std::vector<Vector<T>> basis;
  std::vector<std::size_t> dependent;  // 1-based
  std::vector<std::size_t> zeros;      // 1-based
};

template <Scalar T>
SpanScan<T> scan_span(const FrameSeq<T>& frame, double tol) {
  SpanScan<T> out;
  const double zero_cut = zero_threshold(frame);
  for (std::size_t k = 0; k < frame.size(); ++k) {
    const Vector<T>& f = frame[k];
    const double fnorm = norm(f);
    if (fnorm <= zero_cut) {
      out.zeros.push_back(k + 1);
      continue;
    }
    Vector<T> r = f;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector<T>& q : out.basis) axpy<T>(-inner(r, q), q, r);
    }
    const double rnorm = norm(r);
    if (rnorm <= tol * fnorm) {
      out.dependent.push_back(k + 1);
    } else {
      for (T& x : r) x /= rnorm;
      out.basis.push_back(std::move(r));
    }
  }
  return out;
}

template <Scalar T>
void require_same_shape(const FrameSeq<T>& a, const FrameSeq<T>& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw DimensionError("frame shape mismatch");
  }
}

}  // namespace

template <Scalar T>
FrameSeq<T>::FrameSeq(std::size_t dim, std::vector<Vector<T>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw DimensionError("frame dimension must be positive");
  if (vectors_.empty()) throw DimensionError("frame must contain at least one vector");
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != dim_) {
      throw DimensionError("vector " + std::to_string(i + 1) + " has dimension " +
                           std::to_string(vectors_[i].size()) + ", expected " + std::to_string(dim_));
    }
    for (const T& x : vectors_[i]) {
      if (!is_finite(x)) throw NonFiniteError("vector " + std::to_string(i + 1) + " has a non-finite coordinate");
    }
  }
}

template <Scalar T>
Matrix<T> frame_operator(const FrameSeq<T>& frame) {
  const std::size_t d = frame.dim();
  Matrix<T> s(d);
  for (const Vector<T>& f : frame) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) s(a, b) += f[a] * conj(f[b]);
  }
  return s;
}

template <Scalar T>
Vector<T> apply_frame_operator(const FrameSeq<T>& frame, std::span<const T> f) {
  if (f.size() != frame.dim()) throw DimensionError("vector dimension does not match frame dimension");
  Vector<T> out(frame.dim(), T{});
  for (const Vector<T>& fi : frame) axpy<T>(inner<T>(f, fi), fi, out);
  return out;
}

template <Scalar T>
FrameBounds frame_bounds(const FrameSeq<T>& frame) {
  const auto eig = hermitian_eigen(frame_operator(frame));
  // S is positive semidefinite; rounding can push a zero eigenvalue just below 0.
  const double lower = std::max(eig.values.front(), 0.0);
  const double upper = std::max(eig.values.back(), lower);
  return {lower, upper};
}

template <Scalar T>
ParsevalCheck is_parseval(const FrameSeq<T>& frame, double tol, double dep_tol) {
  const Matrix<T> diff = frame_operator(frame) - span_projection(frame, dep_tol);
  const double residual = diff.frobenius_norm();
  return {residual <= tol, residual};
}

template <Scalar T>
FrameSeq<T> canonical_parseval(const FrameSeq<T>& frame, SpanMode mode, double dep_tol) {
  const std::size_t d = frame.dim();
  std::vector<Vector<T>> out;
  out.reserve(frame.size());

  if (mode == SpanMode::ambient) {
    const Matrix<T> root = inv_sqrt(frame_operator(frame));
    for (const Vector<T>& f : frame) out.push_back(root.apply(f));
    return FrameSeq<T>(d, std::move(out));
  }

  const SpanScan<T> scan = scan_span(frame, dep_tol);
  const std::size_t r = scan.basis.size();
  if (r == 0) return FrameSeq<T>(d, std::vector<Vector<T>>(frame.size(), Vector<T>(d, T{})));

  // Coordinates in the span basis: f = sum_a <f, q_a> q_a.
  std::vector<Vector<T>> coords;
  coords.reserve(frame.size());
  Matrix<T> s_span(r);
  for (const Vector<T>& f : frame) {
    Vector<T> c(r);
    for (std::size_t a = 0; a < r; ++a) c[a] = inner(f, scan.basis[a]);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) s_span(a, b) += c[a] * conj(c[b]);
    coords.push_back(std::move(c));
  }
  const Matrix<T> root = inv_sqrt(s_span);

  std::size_t next_zero = 0;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    Vector<T> g(d, T{});
    const bool is_zero = next_zero < scan.zeros.size() && scan.zeros[next_zero] == i + 1;
    if (is_zero) {
      ++next_zero;
    } else {
      const Vector<T> c = root.apply(coords[i]);
      for (std::size_t a = 0; a < r; ++a) axpy<T>(c[a], scan.basis[a], g);
    }
    out.push_back(std::move(g));
  }
  return FrameSeq<T>(d, std::move(out));
}

template <Scalar T>
Vector<T> reconstruct(const FrameSeq<T>& frame, std::span<const T> f) {
  return apply_frame_operator(frame, f);
}

template <Scalar T>
std::vector<std::size_t> dependency_profile(const FrameSeq<T>& frame, double tol) {
  return scan_span(frame, tol).dependent;
}

template <Scalar T>
std::vector<std::size_t> zero_indices(const FrameSeq<T>& frame) {
  std::vector<std::size_t> out;
  const double cut = zero_threshold(frame);
  for (std::size_t k = 0; k < frame.size(); ++k)
    if (norm(frame[k]) <= cut) out.push_back(k + 1);
  return out;
}

template <Scalar T>
double zero_threshold(const FrameSeq<T>& frame) {
  double largest = 0.0;
  for (const Vector<T>& f : frame) largest = std::max(largest, norm(f));
  return kZeroRelTol * (largest > 0.0 ? largest : 1.0);
}

template <Scalar T>
std::vector<Vector<T>> span_basis(const FrameSeq<T>& frame, double dep_tol) {
  return scan_span(frame, dep_tol).basis;
}

template <Scalar T>
Matrix<T> span_projection(const FrameSeq<T>& frame, double dep_tol) {
  const std::size_t d = frame.dim();
  Matrix<T> p(d);
  for (const Vector<T>& q : span_basis(frame, dep_tol)) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) p(a, b) += q[a] * conj(q[b]);
  }
  return p;
}

template <Scalar T>
double l2_distance(const FrameSeq<T>& a, const FrameSeq<T>& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double di = distance<T>(a[i], b[i]);
    s += di * di;
  }
  return std::sqrt(s);
}

template <Scalar T>
double squared_l2_norm(const FrameSeq<T>& frame) {
  double s = 0.0;
  for (const Vector<T>& f : frame) s += norm_squared(f);
  return s;
}

template <Scalar T>
double orthonormality_residual(const FrameSeq<T>& frame, const std::vector<std::size_t>& indices) {
  double worst = 0.0;
  for (std::size_t i : indices) {
    for (std::size_t j : indices) {
      const T g = inner(frame[i - 1], frame[j - 1]);
      worst = std::max(worst, magnitude(g - T{i == j ? 1.0 : 0.0}));
    }
  }
  return worst;
}

#define GGSP_INSTANTIATE(T)                                                                       \
  template class FrameSeq<T>;                                                                     \
  template Matrix<T> frame_operator<T>(const FrameSeq<T>&);                                       \
  template Vector<T> apply_frame_operator<T>(const FrameSeq<T>&, std::span<const T>);             \
  template FrameBounds frame_bounds<T>(const FrameSeq<T>&);                                       \
  template ParsevalCheck is_parseval<T>(const FrameSeq<T>&, double, double);                      \
  template FrameSeq<T> canonical_parseval<T>(const FrameSeq<T>&, SpanMode, double);               \
  template Vector<T> reconstruct<T>(const FrameSeq<T>&, std::span<const T>);                      \
  template std::vector<std::size_t> dependency_profile<T>(const FrameSeq<T>&, double);            \
  template std::vector<std::size_t> zero_indices<T>(const FrameSeq<T>&);                          \
  template double zero_threshold<T>(const FrameSeq<T>&);                                          \
  template std::vector<Vector<T>> span_basis<T>(const FrameSeq<T>&, double);                      \
  template Matrix<T> span_projection<T>(const FrameSeq<T>&, double);                              \
  template double l2_distance<T>(const FrameSeq<T>&, const FrameSeq<T>&);                         \
  template double squared_l2_norm<T>(const FrameSeq<T>&);                                         \
  template double orthonormality_residual<T>(const FrameSeq<T>&, const std::vector<std::size_t>&);

GGSP_INSTANTIATE(double)
GGSP_INSTANTIATE(cplx)

#undef GGSP_INSTANTIATE

}  // namespace ggsp
