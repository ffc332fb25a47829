#pragma once

#include <cstddef>
#include <string_view>

#include "ggsp/scalar.hpp"

namespace ggsp::kernels {

// Dense vector primitives behind inner products and rank-one updates.
// Every table computes the same mathematical result; SIMD tables may
// differ from the scalar reference in the last few ulps because of
// reassociation and fused multiply-add.
struct KernelTable {
  std::string_view name;
  // sum_j u_j * v_j
  double (*dot_real)(const double* u, const double* v, std::size_t n);
  // sum_j u_j * conj(v_j)
  cplx (*dot_complex)(const cplx* u, const cplx* v, std::size_t n);
  // y += a * x
  void (*axpy_real)(double a, const double* x, double* y, std::size_t n);
  void (*axpy_complex)(cplx a, const cplx* x, cplx* y, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the build or the host CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// Chosen once per process: AVX2 when available, unless the environment
// variable GGSP_KERNELS=scalar forces the reference path.
const KernelTable& active();

inline double dot(const double* u, const double* v, std::size_t n) {
  return active().dot_real(u, v, n);
}
inline cplx dot(const cplx* u, const cplx* v, std::size_t n) {
  return active().dot_complex(u, v, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy_real(a, x, y, n);
}
inline void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  active().axpy_complex(a, x, y, n);
}

}  // namespace ggsp::kernels
