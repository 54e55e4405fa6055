#pragma once

// The kaleidoscope basis: n orthonormal cat states built from the n coherent
// states sitting on the vertices of a regular n-gon,
//
//   |k~>_alpha = N_k (1/sqrt(n)) sum_j w^{jk} |q^{2j} alpha>,   0 <= k < n,
//   N_k        = exp(|alpha|^2/2) / (sqrt(n) sqrt(f_k(|alpha|^2))),
//
// with f_k the mod-n exponential. n = 2 gives the even/odd cat states, n = 3
// the trinity states, n = 4 the quartet states.
//
// In the Fock basis the sum over j keeps only levels m = k (mod n) (the
// roots-of-unity lemma), which is why the states are orthogonal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kaleido/errors.hpp"
#include "kaleido/fock.hpp"
#include "kaleido/matrix.hpp"
#include "kaleido/modexp.hpp"
#include "kaleido/roots.hpp"

namespace kaleido {

/// Q(k, j) = w^{jk} / sqrt(n), w = exp(-2 pi i / n).
inline UnitaryMatrix dft_matrix(int n) {
  if (n < 1) throw std::invalid_argument("dft_matrix: n must be >= 1");
  const auto size = static_cast<std::size_t>(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  UnitaryMatrix q(size);
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t j = 0; j < size; ++j) {
      q(k, j) = scale * w_power(n, static_cast<long long>(j * k));
    }
  return q;
}

/// The n rotated coherent states |q^{2j} alpha>, j = 0..n-1.
inline std::vector<FockVector> rotated_coherent_states(int n, complex alpha, std::size_t dim) {
  if (n < 1) throw std::invalid_argument("rotated_coherent_states: n must be >= 1");
  std::vector<FockVector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.push_back(coherent_state(q2_power(n, j) * alpha, dim));
  return out;
}

/// Unnormalized states (1/sqrt(n)) sum_j w^{jk} |q^{2j} alpha>, k = 0..n-1.
/// The squared norm of the k-th is n exp(-|alpha|^2) f_k(|alpha|^2) up to the
/// truncated tail.
///
/// The sum over j cancels everything outside the residue class k (mod n).
/// It is carried out in long double and rounded once at the end: a state
/// whose class carries little weight would otherwise keep double-precision
/// cancellation residue of order 1e-16 / sqrt(f_k) after normalization.
inline std::vector<FockVector> cat_states_raw(int n, complex alpha, std::size_t dim) {
  using wide = long double;
  using cwide = std::complex<wide>;
  if (n < 1) throw std::invalid_argument("cat_states_raw: n must be >= 1");

  std::vector<std::vector<cwide>> rotated;
  rotated.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    rotated.push_back(coherent_amplitudes(q2_power<wide>(n, j) * cwide(alpha), dim));
  }

  const wide scale = 1 / std::sqrt(static_cast<wide>(n));
  std::vector<FockVector> out;
  out.reserve(rotated.size());
  for (int k = 0; k < n; ++k) {
    std::vector<cwide> acc(dim);
    for (int j = 0; j < n; ++j) {
      const cwide coeff = scale * w_power<wide>(n, static_cast<long long>(j) * k);
      for (std::size_t m = 0; m < dim; ++m) acc[m] += coeff * rotated[j][m];
    }
    std::vector<complex> amps(dim);
    for (std::size_t m = 0; m < dim; ++m) amps[m] = complex(acc[m]);
    out.emplace_back(std::move(amps));
  }
  return out;
}

/// As above, but first checks that `dim` keeps the Poisson tail below `eps`.
inline std::vector<FockVector> cat_states_raw(int n, complex alpha, std::size_t dim, double eps) {
  const std::size_t needed = truncation_dim(alpha, eps);
  if (dim < needed) {
    throw TruncationTooSmall("cat_states_raw: dim " + std::to_string(dim) + " < " +
                             std::to_string(needed) + " required for eps");
  }
  return cat_states_raw(n, alpha, dim);
}

namespace detail {

inline void require_nondegenerate(int n, complex alpha, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
  if (!is_finite(alpha)) throw std::invalid_argument(std::string(where) + ": non-finite alpha");
  if (n >= 2 && alpha == complex{}) {
    throw DegenerateAlpha(std::string(where) + ": alpha = 0 leaves f_k(0) = 0 for k >= 1");
  }
}

}  // namespace detail

/// Diagonal of the normalization matrix N: the k-th entry times the k-th raw
/// state has unit norm.
inline std::vector<double> normalization_constants(int n, complex alpha) {
  detail::require_nondegenerate(n, alpha, "normalization_constants");
  const double x = std::norm(alpha);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double fk = modexp_series(ModExpSpec(n, k), x).real();
    out.push_back(std::exp(0.5 * x) / (std::sqrt(static_cast<double>(n)) * std::sqrt(fk)));
  }
  return out;
}

/// Full coefficient c_k in |k~> = c_k sum_j w^{jk} |q^{2j} alpha>, i.e. N_k / sqrt(n).
/// For n = 2 these are exp(|alpha|^2/2) / (2 sqrt(cosh|alpha|^2)) and the sinh analogue.
inline std::vector<double> total_coefficients(int n, complex alpha) {
  auto out = normalization_constants(n, alpha);
  for (auto& c : out) c /= std::sqrt(static_cast<double>(n));
  return out;
}

struct KaleidoscopeBasis {
  int n;
  complex alpha;
  std::size_t dim;
  std::vector<FockVector> states;
  std::vector<double> norm_constants;
  double tail_eps;
  // States with f_k(|alpha|^2) < 1e-12 exp(|alpha|^2). They are still built,
  // but their normalization constant is large and accuracy degrades.
  std::vector<int> ill_conditioned;
};

/// Rotates `v` so that its first non-negligible amplitude is real and positive.
inline FockVector fix_global_phase(const FockVector& v) {
  double largest = 0.0;
  for (const auto& a : v.amps()) largest = std::max(largest, std::abs(a));
  if (largest == 0.0) return v;
  const auto amps = v.amps();
  for (std::size_t lead = 0; lead < amps.size(); ++lead) {
    const double mag = std::abs(amps[lead]);
    if (mag <= 1e-12 * largest) continue;
    const complex rotation = std::conj(amps[lead]) / mag;
    std::vector<complex> out(amps.begin(), amps.end());
    for (auto& a : out) a *= rotation;
    out[lead] = mag;
    return FockVector(std::move(out));
  }
  return v;
}

/// Truncation for a whole basis. Besides the overall Poisson tail of |alpha>
/// (truncation_dim), each residue class k must lose less than eps of its own
/// weight exp(-x) f_k(x): a class with little weight, e.g. k = n-1 at small
/// |alpha|, would otherwise be cut after its first level. Never smaller than n.
inline std::size_t basis_truncation_dim(int n, complex alpha, double eps) {
  if (n < 1) throw std::invalid_argument("basis_truncation_dim: n must be >= 1");
  std::size_t dim = std::max(truncation_dim(alpha, eps), static_cast<std::size_t>(n));
  const double x = std::norm(alpha);
  if (x == 0.0) return dim;

  // Each class weighs at least its first level, so the lightest first level
  // sets how far out the weights are needed.
  double lightest = 1.0;
  for (int k = 0; k < n; ++k) {
    lightest = std::min(lightest, std::exp(-x + k * std::log(x) - std::lgamma(k + 1.0)));
  }
  const auto weights = detail::poisson_weights(x, eps * lightest);
  const auto classes = static_cast<std::size_t>(n);
  std::vector<double> total(classes, 0.0), tail(classes, 0.0);
  for (std::size_t m = 0; m < weights.size(); ++m) total[m % classes] += weights[m];

  std::size_t needed = weights.size();
  for (std::size_t m = weights.size(); m-- > 0;) {
    auto& t = tail[m % classes];
    t += weights[m];
    if (t >= eps * total[m % classes]) break;
    needed = m;
  }
  return std::max(dim, needed);
}

/// Normalized kaleidoscope basis for (n, alpha). The shared truncation uses
/// |alpha| only, since rotation preserves it.
inline KaleidoscopeBasis kaleidoscope_basis(int n, complex alpha, double eps) {
  detail::require_nondegenerate(n, alpha, "kaleidoscope_basis");
  const std::size_t dim = basis_truncation_dim(n, alpha, eps);
  const auto raw = cat_states_raw(n, alpha, dim);
  auto constants = normalization_constants(n, alpha);

  KaleidoscopeBasis basis{n, alpha, dim, {}, constants, eps, {}};
  const double x = std::norm(alpha);
  basis.states.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    basis.states.push_back(fix_global_phase(raw[k].scaled(constants[k])));
    const double fk = modexp_series(ModExpSpec(n, static_cast<int>(k)), x).real();
    if (fk < 1e-12 * std::exp(x)) basis.ill_conditioned.push_back(static_cast<int>(k));
  }
  return basis;
}

struct GramReport {
  SquareMatrix gram;
  double max_deviation;  // max |gram - I|, entrywise
};

inline GramReport gram(const std::vector<FockVector>& states) {
  if (states.empty()) throw std::invalid_argument("gram: empty state list");
  SquareMatrix g(states.size());
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t l = 0; l < states.size(); ++l) g(k, l) = inner_product(states[k], states[l]);
  const double deviation = max_abs_diff(g, SquareMatrix::identity(states.size()));
  return {std::move(g), deviation};
}

/// sum_{j=0}^{n-1} q^{2(m-s)j}, summed term by term. Equals n when m = s (mod n)
/// and vanishes otherwise.
inline complex roots_lemma_sum(int n, long long m, long long s) {
  if (n < 1) throw std::invalid_argument("roots_lemma_sum: n must be >= 1");
  complex sum = 0.0;
  for (int j = 0; j < n; ++j) sum += q2_power(n, (m - s) * j);
  return sum;
}

}  // namespace kaleido
