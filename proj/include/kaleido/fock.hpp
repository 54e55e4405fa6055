#pragma once

// Truncated Fock space: number-state amplitudes, ladder operators and the
// coherent-state closed forms that everything else is checked against.
//
// A FockVector of dimension D holds amplitudes on |0>, ..., |D-1>. Anything
// above D-1 is dropped; the operators below state exactly what they lose.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kaleido/errors.hpp"
#include "kaleido/roots.hpp"

namespace kaleido {

class FockVector {
 public:
  /// Zero vector of dimension `dim`.
  explicit FockVector(std::size_t dim) : amps_(dim) {
    if (dim == 0) throw std::invalid_argument("FockVector: dim must be >= 1");
  }

  explicit FockVector(std::vector<complex> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw std::invalid_argument("FockVector: dim must be >= 1");
    for (const auto& a : amps_) {
      if (!is_finite(a)) throw std::invalid_argument("FockVector: non-finite amplitude");
    }
  }

  /// Number state |level> in a space of dimension `dim`.
  static FockVector number_state(std::size_t dim, std::size_t level) {
    if (level >= dim) throw std::out_of_range("FockVector::number_state: level >= dim");
    std::vector<complex> amps(dim);
    amps[level] = 1.0;
    return FockVector(std::move(amps));
  }

  std::size_t dim() const { return amps_.size(); }
  std::span<const complex> amps() const { return amps_; }
  complex operator[](std::size_t level) const { return amps_[level]; }

  double norm_squared() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return sum;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  FockVector scaled(complex factor) const {
    std::vector<complex> out(amps_);
    for (auto& a : out) a *= factor;
    return FockVector(std::move(out));
  }

  /// this + factor * other
  FockVector plus_scaled(const FockVector& other, complex factor) const {
    if (other.dim() != dim()) {
      throw DimensionMismatch("plus_scaled: " + std::to_string(dim()) + " vs " +
                              std::to_string(other.dim()));
    }
    std::vector<complex> out(amps_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += factor * other.amps_[i];
    return FockVector(std::move(out));
  }

 private:
  std::vector<complex> amps_;
};

struct CoherentSpec {
  complex alpha;
  std::size_t dim;
};

/// |alpha> truncated to `dim` levels:
///   amps[m] = exp(-|alpha|^2/2) alpha^m / sqrt(m!)
/// built by the recurrence amps[m] = amps[m-1] * alpha / sqrt(m), which never
/// forms alpha^m or m! separately. The norm falls short of 1 by exactly the
/// Poisson tail above dim-1.
template <std::floating_point T>
std::vector<std::complex<T>> coherent_amplitudes(std::complex<T> alpha, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("coherent_state: dim must be >= 1");
  if (!is_finite(alpha)) throw std::invalid_argument("coherent_state: non-finite alpha");
  std::vector<std::complex<T>> amps(dim);
  amps[0] = std::exp(T(-0.5) * std::norm(alpha));
  for (std::size_t m = 1; m < dim; ++m) {
    amps[m] = amps[m - 1] * alpha / std::sqrt(static_cast<T>(m));
  }
  return amps;
}

inline FockVector coherent_state(const CoherentSpec& spec) {
  return FockVector(coherent_amplitudes(spec.alpha, spec.dim));
}

inline FockVector coherent_state(complex alpha, std::size_t dim) {
  return coherent_state(CoherentSpec{alpha, dim});
}

/// <u|v> = sum conj(u[m]) v[m]
inline complex inner_product(const FockVector& u, const FockVector& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("inner_product: " + std::to_string(u.dim()) + " vs " +
                            std::to_string(v.dim()));
  }
  complex sum = 0.0;
  for (std::size_t m = 0; m < u.dim(); ++m) sum += std::conj(u[m]) * v[m];
  return sum;
}

/// <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta), evaluated as written.
inline complex coherent_overlap_closed(complex alpha, complex beta) {
  if (!is_finite(alpha) || !is_finite(beta)) {
    throw std::invalid_argument("coherent_overlap_closed: non-finite input");
  }
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(alpha) * beta);
}

/// <q^{2k} alpha | q^{2l} alpha> = exp(|alpha|^2 (q^{2(l-k)} - 1)) for the
/// n-gon rotation q^2 = exp(2 pi i / n).
inline complex rotated_overlap(complex alpha, int n, int k, int l) {
  if (n < 1) throw std::invalid_argument("rotated_overlap: n must be >= 1");
  if (k < 0 || k >= n || l < 0 || l >= n) {
    throw std::out_of_range("rotated_overlap: k and l must lie in [0, n)");
  }
  if (!is_finite(alpha)) throw std::invalid_argument("rotated_overlap: non-finite alpha");
  if (k == l) return 1.0;
  return std::exp(std::norm(alpha) * (q2_power(n, l - k) - 1.0));
}

/// a|m> = sqrt(m)|m-1>. The top level receives nothing since |dim> is not stored.
inline FockVector annihilate(const FockVector& v) {
  std::vector<complex> out(v.dim());
  for (std::size_t m = 0; m + 1 < v.dim(); ++m) {
    out[m] = std::sqrt(static_cast<double>(m + 1)) * v[m + 1];
  }
  return FockVector(std::move(out));
}

/// a^dag|m> = sqrt(m+1)|m+1>. The component sqrt(dim) v[dim-1] that would land
/// on |dim> is dropped; see create_truncation_loss().
inline FockVector create(const FockVector& v) {
  std::vector<complex> out(v.dim());
  for (std::size_t m = 1; m < v.dim(); ++m) {
    out[m] = std::sqrt(static_cast<double>(m)) * v[m - 1];
  }
  return FockVector(std::move(out));
}

/// Squared norm that create() discards for this input.
inline double create_truncation_loss(const FockVector& v) {
  return static_cast<double>(v.dim()) * std::norm(v[v.dim() - 1]);
}

namespace detail {

/// Poisson weights exp(-x) x^m / m! for m = 0, 1, ..., formed in log space and
/// continued past the mode until the remaining tail is below `cutoff` (up to a
/// factor 1e-6).
inline std::vector<double> poisson_weights(double x, double cutoff) {
  const double log_x = std::log(x);
  cutoff = std::max(cutoff, 1e-300);
  std::vector<double> weights;
  for (std::size_t m = 0;; ++m) {
    const double md = static_cast<double>(m);
    const double w = std::exp(-x + md * log_x - std::lgamma(md + 1.0));
    weights.push_back(w);
    // Past the mode the weights fall faster than geometrically with ratio
    // x/(m+1), which bounds what is left.
    if (md > x + 1.0 && w < 1e-6 * cutoff * (1.0 - x / (md + 1.0))) break;
    if (m > 1'000'000) throw std::overflow_error("poisson_weights: |alpha| too large");
  }
  return weights;
}

}  // namespace detail

/// Smallest D with Poisson tail exp(-|alpha|^2) sum_{m>=D} |alpha|^{2m}/m! < eps.
///
/// The tail is accumulated from the far end, so the result does not suffer
/// the cancellation of 1 - (partial sum).
inline std::size_t truncation_dim(complex alpha, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("truncation_dim: eps must lie in (0, 1)");
  if (!is_finite(alpha)) throw std::invalid_argument("truncation_dim: non-finite alpha");
  const double x = std::norm(alpha);
  if (x == 0.0) return 1;

  const auto weights = detail::poisson_weights(x, eps);
  double tail = 0.0;
  std::size_t dim = weights.size();
  for (std::size_t m = weights.size(); m-- > 0;) {
    tail += weights[m];
    if (tail >= eps) break;
    dim = m;
  }
  return std::max<std::size_t>(dim, 1);
}

}  // namespace kaleido
