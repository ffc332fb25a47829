#pragma once

#include <cstddef>
#include <vector>

#include "ggsp/linalg.hpp"
#include "ggsp/scalar.hpp"

namespace ggsp {

inline constexpr double kDefaultDependencyTol = 1e-10;
// A vector with norm <= kZeroRelTol * (largest norm in its sequence) is a zero vector.
inline constexpr double kZeroRelTol = 1e-12;

/// Ordered, nonempty sequence of vectors of one dimension over one field.
/// Zero vectors are allowed. Indices reported by the frame routines are 1-based.
template <Scalar T>
class FrameSeq {
 public:
  FrameSeq(std::size_t dim, std::vector<Vector<T>> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  static constexpr Field field() { return field_of<T>(); }

  const Vector<T>& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Vector<T>>& vectors() const { return vectors_; }

  auto begin() const { return vectors_.begin(); }
  auto end() const { return vectors_.end(); }

  friend bool operator==(const FrameSeq&, const FrameSeq&) = default;

 private:
  std::size_t dim_;
  std::vector<Vector<T>> vectors_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct ParsevalCheck {
  bool parseval = false;
  double residual = 0.0;  // ||S - P_span||_F
};

enum class SpanMode {
  restricted,  // work inside span(F); non-spanning input is fine
  ambient,     // require S invertible on the whole space
};

/// S = sum_i f_i f_i^*.
template <Scalar T>
Matrix<T> frame_operator(const FrameSeq<T>& frame);

/// S f computed as sum_i <f, f_i> f_i.
template <Scalar T>
Vector<T> apply_frame_operator(const FrameSeq<T>& frame, std::span<const T> f);

/// Extreme eigenvalues of the ambient frame operator. lower == 0 for a
/// sequence that does not span the ambient space.
template <Scalar T>
FrameBounds frame_bounds(const FrameSeq<T>& frame);

/// Compares S with the orthogonal projection onto span(F), so a Parseval
/// frame for a proper subspace passes.
template <Scalar T>
ParsevalCheck is_parseval(const FrameSeq<T>& frame, double tol = 1e-10,
                          double dep_tol = kDefaultDependencyTol);

/// (S^{-1/2} f_i)_i. In restricted mode S is expressed in an orthonormal
/// basis of span(F) first. Ambient mode propagates RankDeficientError.
template <Scalar T>
FrameSeq<T> canonical_parseval(const FrameSeq<T>& frame, SpanMode mode = SpanMode::restricted,
                               double dep_tol = kDefaultDependencyTol);

/// sum_i <f, f_i> f_i; equals f when F is Parseval for a space containing f.
template <Scalar T>
Vector<T> reconstruct(const FrameSeq<T>& frame, std::span<const T> f);

/// 1-based indices k with f_k nonzero and ||f_k - P_{k-1} f_k|| <= tol * ||f_k||.
template <Scalar T>
std::vector<std::size_t> dependency_profile(const FrameSeq<T>& frame,
                                            double tol = kDefaultDependencyTol);

/// 1-based indices of zero vectors (relative threshold, see kZeroRelTol).
template <Scalar T>
std::vector<std::size_t> zero_indices(const FrameSeq<T>& frame);

template <Scalar T>
double zero_threshold(const FrameSeq<T>& frame);

/// Orthonormal basis of span(F) built by modified Gram-Schmidt with one
/// reorthogonalization pass, skipping zero and dependent vectors.
template <Scalar T>
std::vector<Vector<T>> span_basis(const FrameSeq<T>& frame, double dep_tol = kDefaultDependencyTol);

template <Scalar T>
Matrix<T> span_projection(const FrameSeq<T>& frame, double dep_tol = kDefaultDependencyTol);

/// sqrt(sum_i ||f_i - g_i||^2); sequences must have equal length and dimension.
template <Scalar T>
double l2_distance(const FrameSeq<T>& a, const FrameSeq<T>& b);

/// sum_i ||f_i||^2
template <Scalar T>
double squared_l2_norm(const FrameSeq<T>& frame);

/// max_{i,j} |<g_i, g_j> - delta_ij| over the listed 1-based indices.
template <Scalar T>
double orthonormality_residual(const FrameSeq<T>& frame, const std::vector<std::size_t>& indices);

}  // namespace ggsp
