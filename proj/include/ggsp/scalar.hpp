#pragma once

#include <cmath>
#include <complex>
#include <string_view>
#include <type_traits>

namespace ggsp {

using cplx = std::complex<double>;

enum class Field { real, complex };

template <class T>
struct is_complex : std::false_type {};
template <>
struct is_complex<cplx> : std::true_type {};

template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, cplx>;

template <Scalar T>
constexpr Field field_of() {
  return is_complex<T>::value ? Field::complex : Field::real;
}

constexpr std::string_view field_name(Field f) {
  return f == Field::real ? "real" : "complex";
}

inline double conj(double x) { return x; }
inline cplx conj(const cplx& z) { return std::conj(z); }

inline double real_part(double x) { return x; }
inline double real_part(const cplx& z) { return z.real(); }

// |x|^2 without the sqrt round trip.
inline double abs2(double x) { return x * x; }
inline double abs2(const cplx& z) { return z.real() * z.real() + z.imag() * z.imag(); }

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cplx& z) { return std::abs(z); }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Unit-modulus factor u with x = |x| u; 1 for x == 0.
inline double phase(double x) { return x < 0.0 ? -1.0 : 1.0; }
inline cplx phase(const cplx& z) {
  const double r = std::abs(z);
  return r == 0.0 ? cplx{1.0, 0.0} : z / r;
}

}  // namespace ggsp
