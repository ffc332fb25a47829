// Compiled with -mavx2 -mfma; only reached through avx2_table() after the
// runtime CPU check in kernels_dispatch.cpp.
#include "ggsp/kernels.hpp"

#include <immintrin.h>

namespace ggsp::kernels {

const KernelTable* avx2_table_unchecked();

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_real(const double* u, const double* v, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(u + j), _mm256_loadu_pd(v + j), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(u + j + 4), _mm256_loadu_pd(v + j + 4), acc1);
  }
  for (; j + 4 <= n; j += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(u + j), _mm256_loadu_pd(v + j), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) s += u[j] * v[j];
  return s;
}

cplx dot_complex(const cplx* u, const cplx* v, std::size_t n) {
  // Interleaved (re, im) pairs, two complex numbers per register.
  // re part: ur*vr + ui*vi is a plain elementwise product.
  // im part: ui*vr - ur*vi uses v with re/im swapped and a (-, +) sign.
  const auto* up = reinterpret_cast<const double*>(u);
  const auto* vp = reinterpret_cast<const double*>(v);
  const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(up + 2 * j);
    const __m256d b = _mm256_loadu_pd(vp + 2 * j);
    const __m256d b_sw = _mm256_mul_pd(_mm256_permute_pd(b, 0b0101), sign);
    acc_re = _mm256_fmadd_pd(a, b, acc_re);
    acc_im = _mm256_fmadd_pd(a, b_sw, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; j < n; ++j) {
    re += u[j].real() * v[j].real() + u[j].imag() * v[j].imag();
    im += u[j].imag() * v[j].real() - u[j].real() * v[j].imag();
  }
  return {re, im};
}

void axpy_real(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    _mm256_storeu_pd(y + j, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j)));
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

void axpy_complex(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const auto* xp = reinterpret_cast<const double*>(x);
  auto* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * j);
    const __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0b0101));
    // (ar*xr - ai*xi, ar*xi + ai*xr)
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, t);
    _mm256_storeu_pd(yp + 2 * j, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * j), prod));
  }
  for (; j < n; ++j) {
    const double re = a.real() * x[j].real() - a.imag() * x[j].imag();
    const double im = a.real() * x[j].imag() + a.imag() * x[j].real();
    y[j] = {y[j].real() + re, y[j].imag() + im};
  }
}

}  // namespace

const KernelTable* avx2_table_unchecked() {
  static constexpr KernelTable table{"avx2", dot_real, dot_complex, axpy_real, axpy_complex};
  return &table;
}

}  // namespace ggsp::kernels
