#include "ggsp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ggsp/errors.hpp"
#include "ggsp/kernels.hpp"

namespace ggsp {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTol = 1e-14;
constexpr double kHermitianTol = 1e-12;

template <Scalar T>
void require_finite(std::span<const T> v, const char* what) {
  for (const T& x : v) {
    if (!is_finite(x)) throw NonFiniteError(std::string(what) + ": non-finite coordinate");
  }
}

template <Scalar T>
double off_diagonal_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += abs2(a(i, j));
  return std::sqrt(s);
}

}  // namespace

template <Scalar T>
Matrix<T> Matrix<T>::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = T{1.0};
  return m;
}

template <Scalar T>
Matrix<T> Matrix<T>::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = T{diag[i]};
  return m;
}

template <Scalar T>
Matrix<T> Matrix<T>::adjoint() const {
  Matrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = conj((*this)(i, j));
  return r;
}

template <Scalar T>
double Matrix<T>::frobenius_norm() const {
  double s = 0.0;
  for (const T& x : entries_) s += abs2(x);
  return std::sqrt(s);
}

template <Scalar T>
double Matrix<T>::max_abs() const {
  double m = 0.0;
  for (const T& x : entries_) m = std::max(m, magnitude(x));
  return m;
}

template <Scalar T>
Vector<T> Matrix<T>::apply(std::span<const T> v) const {
  if (v.size() != dim_) throw DimensionError("matrix-vector dimension mismatch");
  Vector<T> out(dim_, T{});
  for (std::size_t i = 0; i < dim_; ++i) {
    T s{};
    for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

template <Scalar T>
Matrix<T> Matrix<T>::multiply(const Matrix& b) const {
  if (b.dim_ != dim_) throw DimensionError("matrix product dimension mismatch");
  Matrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const T a = (*this)(i, k);
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) += a * b(k, j);
    }
  return r;
}

template <Scalar T>
T inner(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    throw DimensionError("inner: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
  require_finite(u, "inner");
  require_finite(v, "inner");
  return kernels::dot(u.data(), v.data(), u.size());
}

template <Scalar T>
double norm_squared(std::span<const T> v) {
  return real_part(inner<T>(v, v));
}

template <Scalar T>
double norm(std::span<const T> v) {
  return std::sqrt(norm_squared<T>(v));
}

template <Scalar T>
void axpy(T a, std::span<const T> x, std::span<T> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: dimension mismatch");
  kernels::axpy(a, x.data(), y.data(), x.size());
}

template <Scalar T>
Vector<T> scaled(std::span<const T> v, double factor) {
  Vector<T> out(v.begin(), v.end());
  for (T& x : out) x *= factor;
  return out;
}

template <Scalar T>
double distance(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) throw DimensionError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += abs2(u[j] - v[j]);
  return std::sqrt(s);
}

template <Scalar T>
void require_hermitian(const Matrix<T>& m) {
  const double scale = m.max_abs();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (!is_finite(m(i, j))) throw NonFiniteError("matrix has a non-finite entry");
      if (magnitude(m(i, j) - conj(m(j, i))) > kHermitianTol * scale) {
        throw NotHermitianError("matrix is not Hermitian at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
    }
  }
}

template <Scalar T>
EigenDecomposition<T> hermitian_eigen(const Matrix<T>& m) {
  require_hermitian(m);
  const std::size_t d = m.dim();
  Matrix<T> a = m;
  Matrix<T> v = Matrix<T>::identity(d);
  const double scale = m.frobenius_norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > kJacobiTol * scale) {
    if (sweep == kMaxSweeps) throw ConvergenceError("hermitian_eigen: no convergence in 100 sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const T apq = a(p, q);
        const double b = magnitude(apq);
        if (b == 0.0) continue;
        // A phase on column q makes the (p, q) entry real and positive; a
        // real plane rotation then annihilates it. U = diag(1, conj(u)) R.
        const T u = phase(apq);
        const double theta = (real_part(a(q, q)) - real_part(a(p, p))) / (2.0 * b);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const T upp{c};
        const T upq{s};
        const T uqp = -s * conj(u);
        const T uqq = c * conj(u);

        for (std::size_t k = 0; k < d; ++k) {
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const T apk = a(p, k);
          const T aqk = a(q, k);
          a(p, k) = conj(upp) * apk + conj(uqp) * aqk;
          a(q, k) = conj(upq) * apk + conj(uqq) * aqk;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const T vkp = v(k, p);
          const T vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = T{real_part(a(p, p))};
        a(q, q) = T{real_part(a(q, q))};
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return real_part(a(i, i)) < real_part(a(j, j)); });

  EigenDecomposition<T> out;
  out.sweeps = sweep;
  for (std::size_t idx : order) {
    out.values.push_back(real_part(a(idx, idx)));
    Vector<T> col(d);
    for (std::size_t k = 0; k < d; ++k) col[k] = v(k, idx);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

template <Scalar T>
Matrix<T> inv_sqrt(const Matrix<T>& m, std::optional<double> floor) {
  const EigenDecomposition<T> eig = hermitian_eigen(m);
  const std::size_t d = m.dim();
  const double largest = d == 0 ? 0.0 : eig.values.back();
  const double cutoff = floor.value_or(1e-12 * std::max(largest, 0.0));
  if (d == 0 || largest <= 0.0 || eig.values.front() <= cutoff) {
    throw RankDeficientError("inv_sqrt: smallest eigenvalue " +
                             std::to_string(d == 0 ? 0.0 : eig.values.front()) +
                             " is at or below the floor; frame operator is rank deficient");
  }
  Matrix<T> r(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double w = 1.0 / std::sqrt(eig.values[k]);
    const Vector<T>& vk = eig.vectors[k];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) r(i, j) += w * vk[i] * conj(vk[j]);
  }
  return r;
}

#define GGSP_INSTANTIATE(T)                                                    \
  template class Matrix<T>;                                                    \
  template T inner<T>(std::span<const T>, std::span<const T>);                 \
  template double norm_squared<T>(std::span<const T>);                         \
  template double norm<T>(std::span<const T>);                                 \
  template void axpy<T>(T, std::span<const T>, std::span<T>);                  \
  template Vector<T> scaled<T>(std::span<const T>, double);                    \
  template double distance<T>(std::span<const T>, std::span<const T>);         \
  template void require_hermitian<T>(const Matrix<T>&);                        \
  template EigenDecomposition<T> hermitian_eigen<T>(const Matrix<T>&);         \
  template Matrix<T> inv_sqrt<T>(const Matrix<T>&, std::optional<double>);

GGSP_INSTANTIATE(double)
GGSP_INSTANTIATE(cplx)

#undef GGSP_INSTANTIATE

}  // namespace ggsp
