#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ggsp/scalar.hpp"

namespace ggsp {

template <Scalar T>
using Vector = std::vector<T>;

/// Square dense matrix, row-major.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim, T{}) {}

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t dim() const { return dim_; }
  T& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  std::span<const T> entries() const { return entries_; }

  Matrix adjoint() const;
  double frobenius_norm() const;
  double max_abs() const;

  Vector<T> apply(std::span<const T> v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b) { return a.multiply(b); }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.entries_.size(); ++k) a.entries_[k] -= b.entries_[k];
    return a;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.entries_.size(); ++k) a.entries_[k] += b.entries_[k];
    return a;
  }

 private:
  Matrix multiply(const Matrix& b) const;

  std::size_t dim_ = 0;
  std::vector<T> entries_;
};

/// Inner product, linear in the first argument: sum_j u_j conj(v_j).
/// Throws DimensionError on length mismatch and NonFiniteError on NaN/Inf input.
template <Scalar T>
T inner(std::span<const T> u, std::span<const T> v);

template <Scalar T>
double norm_squared(std::span<const T> v);

template <Scalar T>
double norm(std::span<const T> v);

/// y += a x
template <Scalar T>
void axpy(T a, std::span<const T> x, std::span<T> y);

template <Scalar T>
Vector<T> scaled(std::span<const T> v, double factor);

/// Euclidean distance between two vectors of equal length.
template <Scalar T>
double distance(std::span<const T> u, std::span<const T> v);

// The overloads below let callers pass Vector<T> directly without spelling
// out the span conversion.
template <Scalar T>
T inner(const Vector<T>& u, const Vector<T>& v) {
  return inner<T>(std::span<const T>(u), std::span<const T>(v));
}
template <Scalar T>
double norm(const Vector<T>& v) {
  return norm<T>(std::span<const T>(v));
}
template <Scalar T>
double norm_squared(const Vector<T>& v) {
  return norm_squared<T>(std::span<const T>(v));
}

/// Throws NotHermitianError when |M_ij - conj(M_ji)| exceeds 1e-12 * max|M_ij|.
template <Scalar T>
void require_hermitian(const Matrix<T>& m);

template <Scalar T>
struct EigenDecomposition {
  std::vector<double> values;      // ascending
  std::vector<Vector<T>> vectors;  // orthonormal, vectors[i] pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm is at most
/// 1e-14 * ||M||_F; throws ConvergenceError after 100 sweeps.
template <Scalar T>
EigenDecomposition<T> hermitian_eigen(const Matrix<T>& m);

/// V diag(lambda^-1/2) V*. The default floor is 1e-12 * largest eigenvalue;
/// any eigenvalue at or below it raises RankDeficientError.
template <Scalar T>
Matrix<T> inv_sqrt(const Matrix<T>& m, std::optional<double> floor = std::nullopt);

}  // namespace ggsp
