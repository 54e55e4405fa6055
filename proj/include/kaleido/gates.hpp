#pragma once

// Generalized Pauli clock and shift matrices and the Fourier decomposition
// Sigma_1 = Q Sigma_3 Q^dag.
//
// Conventions (the only consistent triple with Q(k, j) = w^{jk}/sqrt(n),
// w = exp(-2 pi i / n); the unit tests enumerate the alternatives at n = 3):
//
//   Sigma_3 = diag(1, omega, ..., omega^{n-1}),  omega = q^2 = conj(w)
//   Sigma_1 e_j = e_{(j+1) mod n}
//
// Then (Q Sigma_3 Q^dag)(k, l) = (1/n) sum_j w^{j(k-l-1)} = delta_{k, l+1},
// which is exactly Sigma_1. The Weyl relation reads
// Sigma_1 Sigma_3 = conj(omega) Sigma_3 Sigma_1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include "kaleido/kaleidoscope.hpp"
#include "kaleido/matrix.hpp"
#include "kaleido/roots.hpp"

namespace kaleido {

inline UnitaryMatrix clock_matrix(int n) {
  if (n < 1) throw std::invalid_argument("clock_matrix: n must be >= 1");
  UnitaryMatrix m(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) m(j, j) = q2_power(n, j);
  return m;
}

inline UnitaryMatrix shift_matrix(int n) {
  if (n < 1) throw std::invalid_argument("shift_matrix: n must be >= 1");
  const auto size = static_cast<std::size_t>(n);
  UnitaryMatrix m(size);
  for (std::size_t j = 0; j < size; ++j) m((j + 1) % size, j) = 1.0;
  return m;
}

/// max |Sigma_1 - Q Sigma_3 Q^dag|
inline double verify_clock_shift_decomposition(int n) {
  const auto q = dft_matrix(n);
  return max_abs_diff(shift_matrix(n), q * clock_matrix(n) * q.adjoint());
}

struct WeylRelation {
  complex phase;          // Sigma_1 Sigma_3 = phase * Sigma_3 Sigma_1
  double residual;        // max |Sigma_1 Sigma_3 - phase * Sigma_3 Sigma_1|
  double root_residual;   // |phase^n - 1|
  double scalar_residual; // distance of Sigma_1 Sigma_3 Sigma_1^-1 Sigma_3^-1 from phase * I
};

inline WeylRelation weyl_relation(int n) {
  const auto x = shift_matrix(n);
  const auto z = clock_matrix(n);
  const auto xz = x * z;
  const auto zx = z * x;

  // Read the phase off the largest entry of Sigma_3 Sigma_1.
  std::size_t best_r = 0, best_c = 0;
  for (std::size_t r = 0; r < zx.size(); ++r)
    for (std::size_t c = 0; c < zx.size(); ++c)
      if (std::abs(zx(r, c)) > std::abs(zx(best_r, best_c))) best_r = r, best_c = c;
  const complex phase = xz(best_r, best_c) / zx(best_r, best_c);

  const auto group_commutator = xz * x.adjoint() * z.adjoint();
  const auto scalar = SquareMatrix::identity(x.size()).scaled(phase);

  return {phase, max_abs_diff(xz, zx.scaled(phase)), std::abs(std::pow(phase, n) - 1.0),
          max_abs_diff(group_commutator, scalar)};
}

struct GateReport {
  int n;
  double dft_unitarity;
  double clock_unitarity;
  double shift_unitarity;
  double clock_order;  // max |Sigma_3^n - I|
  double shift_order;  // max |Sigma_1^n - I|
  double decomposition;
  WeylRelation weyl;

  double worst() const {
    return std::max({dft_unitarity, clock_unitarity, shift_unitarity, clock_order, shift_order,
                     decomposition, weyl.residual, weyl.root_residual, weyl.scalar_residual});
  }
};

inline GateReport check_gates(int n) {
  const auto id = SquareMatrix::identity(static_cast<std::size_t>(n));
  const auto z = clock_matrix(n);
  const auto x = shift_matrix(n);
  return {n,
          unitarity_residual(dft_matrix(n)),
          unitarity_residual(z),
          unitarity_residual(x),
          max_abs_diff(z.power(static_cast<unsigned>(n)), id),
          max_abs_diff(x.power(static_cast<unsigned>(n)), id),
          verify_clock_shift_decomposition(n),
          weyl_relation(n)};
}

}  // namespace kaleido
