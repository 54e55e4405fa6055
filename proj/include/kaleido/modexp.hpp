#pragma once

// Mod-n exponentials ("generalized hyperbolic functions")
//
//   f_s(x) = sum_{k>=0} x^{nk+s} / (nk+s)!,   0 <= s < n,
//
// i.e. the exponential series split by residue class of the power. n = 2
// gives cosh and sinh. Two independent evaluations are provided:
//
//   modexp_series  sums the defining series directly;
//   modexp_roots   averages exp over the n-gon,
//                  f_s(x) = (1/n) sum_j conj(q^2)^{js} exp(q^{2j} x).
//
// The series is entire, so x may be any complex number.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kaleido/errors.hpp"
#include "kaleido/roots.hpp"

namespace kaleido {

struct ModExpSpec {
  int n;
  int s;

  ModExpSpec(int modulus, int residue) : n(modulus), s(residue) {
    if (n < 1) throw std::invalid_argument("ModExpSpec: n must be >= 1");
    if (s < 0 || s >= n) {
      throw std::out_of_range("ModExpSpec: s must lie in [0, " + std::to_string(n) + ")");
    }
  }

  friend bool operator==(const ModExpSpec&, const ModExpSpec&) = default;
};

namespace detail {

inline constexpr double kRelativeTermTolerance = 1e-18;
inline constexpr double kAbsoluteTermFloor = 1e-300;
inline constexpr std::size_t kMaxSeriesTerms = 1 << 20;

}  // namespace detail

/// Defining series, summed until a term past the peak drops below 1e-18 of
/// the partial sum (or below 1e-300 in absolute terms). Throws
/// SeriesNotConverged if neither happens within the term cap or the sum
/// overflows.
inline complex modexp_series(const ModExpSpec& spec, complex x) {
  if (!is_finite(x)) throw std::invalid_argument("modexp_series: non-finite x");
  const double ax = std::abs(x);

  // term_k = x^{nk+s} / (nk+s)!
  complex term = 1.0;
  for (int p = 1; p <= spec.s; ++p) term *= x / static_cast<double>(p);
  complex sum = term;
  int power = spec.s;

  for (std::size_t k = 1; k < detail::kMaxSeriesTerms; ++k) {
    for (int i = 0; i < spec.n; ++i) {
      ++power;
      term *= x / static_cast<double>(power);
    }
    sum += term;
    if (!is_finite(sum)) {
      throw SeriesNotConverged("modexp_series: overflow at |x| = " + std::to_string(ax));
    }
    const double mag = std::abs(term);
    const bool past_peak = static_cast<double>(power) > ax;
    if (mag < detail::kAbsoluteTermFloor ||
        (past_peak && mag < detail::kRelativeTermTolerance * std::abs(sum))) {
      return sum;
    }
  }
  throw SeriesNotConverged("modexp_series: term cap exhausted at |x| = " + std::to_string(ax));
}

/// Root-of-unity average. For real x the imaginary round-off (bounded by
/// 1e-13 e^{|x|}) is cleared; complex x is returned untouched.
inline complex modexp_roots(const ModExpSpec& spec, complex x) {
  if (!is_finite(x)) throw std::invalid_argument("modexp_roots: non-finite x");
  complex sum = 0.0;
  for (int j = 0; j < spec.n; ++j) {
    sum += w_power(spec.n, static_cast<long long>(j) * spec.s) * std::exp(q2_power(spec.n, j) * x);
  }
  sum /= static_cast<double>(spec.n);
  if (x.imag() == 0.0 && std::abs(sum.imag()) < 1e-13 * std::exp(std::abs(x))) {
    sum.imag(0.0);
  }
  return sum;
}

/// (f_0(x), ..., f_{n-1}(x)) in one pass over the exponential series: the
/// term x^m/m! goes to bucket m mod n, so the buckets add up to exp(x)
/// term by term.
inline std::vector<complex> modexp_all(int n, complex x) {
  if (n < 1) throw std::invalid_argument("modexp_all: n must be >= 1");
  if (!is_finite(x)) throw std::invalid_argument("modexp_all: non-finite x");
  const double ax = std::abs(x);
  std::vector<complex> buckets(static_cast<std::size_t>(n));
  complex term = 1.0;
  buckets[0] = term;
  int settled = 0;  // consecutive negligible terms
  for (std::size_t m = 1; m < detail::kMaxSeriesTerms; ++m) {
    term *= x / static_cast<double>(m);
    auto& bucket = buckets[m % static_cast<std::size_t>(n)];
    bucket += term;
    if (!is_finite(bucket)) throw SeriesNotConverged("modexp_all: overflow");
    const double mag = std::abs(term);
    const bool negligible =
        mag < detail::kAbsoluteTermFloor ||
        (static_cast<double>(m) > ax && mag < detail::kRelativeTermTolerance * std::abs(bucket));
    settled = negligible ? settled + 1 : 0;
    if (settled >= n && m >= static_cast<std::size_t>(n)) return buckets;
  }
  throw SeriesNotConverged("modexp_all: term cap exhausted");
}

// Derivative structure. Differentiating x^p/p! gives x^{p-1}/(p-1)!, so
// d/dx f_s = f_{s-1} and d/dx f_0 = f_{n-1}. Applying that n times returns f_s.

/// Spec of the `order`-th derivative of f_s.
inline ModExpSpec derivative(const ModExpSpec& spec, int order = 1) {
  if (order < 0) throw std::invalid_argument("derivative: order must be >= 0");
  return {spec.n, static_cast<int>(positive_mod(spec.s - order, spec.n))};
}

/// Exponent list {p} of a finite sum  sum_p x^p / p!.
///
/// This is the series written as index data, so termwise differentiation is
/// exact integer arithmetic with no rounding involved.
class ExponentSeries {
 public:
  /// First `terms` exponents of f_s: s, s+n, s+2n, ...
  static ExponentSeries of(const ModExpSpec& spec, std::size_t terms) {
    ExponentSeries out;
    out.powers_.reserve(terms);
    for (std::size_t k = 0; k < terms; ++k) {
      out.powers_.push_back(static_cast<long long>(k) * spec.n + spec.s);
    }
    return out;
  }

  const std::vector<long long>& powers() const { return powers_; }

  /// Termwise derivative: the constant term (p = 0) vanishes, every other
  /// exponent drops by one.
  ExponentSeries differentiate() const {
    ExponentSeries out;
    for (long long p : powers_) {
      if (p > 0) out.powers_.push_back(p - 1);
    }
    return out;
  }

  ExponentSeries differentiate(int order) const {
    ExponentSeries out = *this;
    for (int i = 0; i < order; ++i) out = out.differentiate();
    return out;
  }

  /// Value at x = 0: only a constant term contributes.
  double value_at_zero() const {
    for (long long p : powers_) {
      if (p == 0) return 1.0;
    }
    return 0.0;
  }

  /// True if the exponents are exactly s, s+n, s+2n, ... for some residue s,
  /// which is then returned through `residue`.
  bool is_residue_class(int n, int* residue = nullptr) const {
    if (powers_.empty()) return false;
    const long long first = powers_.front();
    if (first < 0 || first >= n) return false;
    for (std::size_t k = 0; k < powers_.size(); ++k) {
      if (powers_[k] != first + static_cast<long long>(k) * n) return false;
    }
    if (residue != nullptr) *residue = static_cast<int>(first);
    return true;
  }

 private:
  std::vector<long long> powers_;
};

}  // namespace kaleido
