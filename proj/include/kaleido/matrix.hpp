#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kaleido/errors.hpp"
#include "kaleido/roots.hpp"

namespace kaleido {

// Dense row-major n x n complex matrix. The gates here are at most a few
// dozen wide, so there is no sparse or permutation special-casing.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n) : n_(n), entries_(n * n) {
    if (n == 0) throw std::invalid_argument("SquareMatrix: n must be >= 1");
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }

  complex& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  complex operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }

  SquareMatrix adjoint() const {
    SquareMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  SquareMatrix scaled(complex factor) const {
    SquareMatrix out = *this;
    for (auto& e : out.entries_) e *= factor;
    return out;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_size(a, b);
    SquareMatrix out(a.n_);
    for (std::size_t r = 0; r < a.n_; ++r)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const complex ark = a(r, k);
        if (ark == complex{}) continue;
        for (std::size_t c = 0; c < a.n_; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  SquareMatrix power(unsigned exponent) const {
    SquareMatrix out = identity(n_);
    for (unsigned i = 0; i < exponent; ++i) out = out * *this;
    return out;
  }

  /// max |a_ij - b_ij|
  friend double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_size(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      worst = std::max(worst, std::abs(a.entries_[i] - b.entries_[i]));
    }
    return worst;
  }

 private:
  static void check_same_size(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("SquareMatrix sizes differ");
  }

  std::size_t n_;
  std::vector<complex> entries_;
};

// Matrices built by dft_matrix(), clock_matrix() and shift_matrix().
using UnitaryMatrix = SquareMatrix;

/// max(|MM^dag - I|, |M^dag M - I|), entrywise.
inline double unitarity_residual(const SquareMatrix& m) {
  const auto id = SquareMatrix::identity(m.size());
  const auto adj = m.adjoint();
  return std::max(max_abs_diff(m * adj, id), max_abs_diff(adj * m, id));
}

}  // namespace kaleido
