#include "ggsp/kernels.hpp"

namespace ggsp::kernels {
namespace {

double dot_real(const double* u, const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += u[j] * v[j];
  return s;
}

cplx dot_complex(const cplx* u, const cplx* v, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // u * conj(v)
    re += u[j].real() * v[j].real() + u[j].imag() * v[j].imag();
    im += u[j].imag() * v[j].real() - u[j].real() * v[j].imag();
  }
  return {re, im};
}

void axpy_real(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += a * x[j];
}

void axpy_complex(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double re = a.real() * x[j].real() - a.imag() * x[j].imag();
    const double im = a.real() * x[j].imag() + a.imag() * x[j].real();
    y[j] = {y[j].real() + re, y[j].imag() + im};
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static constexpr KernelTable table{"scalar", dot_real, dot_complex, axpy_real, axpy_complex};
  return table;
}

}  // namespace ggsp::kernels
