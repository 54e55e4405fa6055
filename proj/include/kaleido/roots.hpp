#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <stdexcept>

namespace kaleido {

using complex = std::complex<double>;

// Phase conventions used throughout the library:
//   q^2 = exp(+2 pi i / n)   rotation of alpha between neighbouring polygon vertices
//   w   = exp(-2 pi i / n)   root in the Fourier matrix, w = conj(q^2)
// Only q^2 ever appears, so q itself is never evaluated.

inline long long positive_mod(long long value, long long modulus) {
  const long long r = value % modulus;
  return r < 0 ? r + modulus : r;
}

/// exp(2 pi i * power / n). The exponent is reduced mod n first and quarter
/// turns are returned exactly, so e.g. unit_root(4, 1) is exactly i.
template <std::floating_point T = double>
std::complex<T> unit_root(int n, long long power) {
  if (n < 1) throw std::invalid_argument("unit_root: n must be >= 1");
  const long long r = positive_mod(power, n);
  if ((4 * r) % n == 0) {
    switch ((4 * r) / n) {
      case 0: return {T(1), T(0)};
      case 1: return {T(0), T(1)};
      case 2: return {T(-1), T(0)};
      default: return {T(0), T(-1)};
    }
  }
  const T angle = T(2) * std::numbers::pi_v<T> * static_cast<T>(r) / static_cast<T>(n);
  return {std::cos(angle), std::sin(angle)};
}

/// (q^2)^power.
template <std::floating_point T = double>
std::complex<T> q2_power(int n, long long power) {
  return unit_root<T>(n, power);
}

/// w^power with w = exp(-2 pi i / n).
template <std::floating_point T = double>
std::complex<T> w_power(int n, long long power) {
  return unit_root<T>(n, -power);
}

template <std::floating_point T>
bool is_finite(std::complex<T> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace kaleido
