#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "kaleido/fock.hpp"
#include "oracles.hpp"

using kaleido::complex;
using kaleido::FockVector;

namespace {

std::vector<complex> alpha_grid() {
  std::vector<complex> grid;
  for (double re : {-2.0, -1.3, -0.5, 0.0, 0.7, 1.0, 1.9})
    for (double im : {-1.2, 0.0, 0.4, 1.3}) {
      if (std::abs(complex(re, im)) <= 2.0) grid.emplace_back(re, im);
    }
  return grid;
}

}  // namespace

TEST(fock, vacuum_is_first_number_state) {
  const auto v = kaleido::coherent_state(0.0, 4);
  ASSERT_EQ(v.dim(), 4u);
  EXPECT_EQ(v[0], complex(1.0));
  for (std::size_t m = 1; m < 4; ++m) EXPECT_EQ(v[m], complex(0.0));
}

TEST(fock, coherent_ground_amplitude) {
  const auto v = kaleido::coherent_state(1.0, 1);
  EXPECT_NEAR(v[0].real(), 0.60653065971263342, 1e-16);
  EXPECT_EQ(v[0].imag(), 0.0);
}

TEST(fock, coherent_amplitudes_match_direct_formula) {
  for (const auto alpha : alpha_grid()) {
    const auto v = kaleido::coherent_state(alpha, 40);
    for (int m = 0; m < 40; ++m) {
      const auto expected = oracle::coherent_amp(oracle::cld(alpha), m);
      EXPECT_NEAR(v[m].real(), static_cast<double>(expected.real()), 1e-15);
      EXPECT_NEAR(v[m].imag(), static_cast<double>(expected.imag()), 1e-15);
    }
  }
}

TEST(fock, coherent_norm_deficit_is_the_tail) {
  // dim = 32 at alpha = 1: the missing tail is ~1.4e-36.
  EXPECT_NEAR(kaleido::coherent_state(1.0, 32).norm_squared(), 1.0, 1e-12);
  const auto v = kaleido::coherent_state(2.0, 8);
  EXPECT_NEAR(1.0 - v.norm_squared(), static_cast<double>(oracle::poisson_tail(4.0L, 8)), 1e-14);
}

TEST(fock, coherent_rejects_bad_input) {
  EXPECT_THROW(kaleido::coherent_state(1.0, 0), std::invalid_argument);
  EXPECT_THROW(kaleido::coherent_state(complex(NAN, 0.0), 4), std::invalid_argument);
  EXPECT_THROW(kaleido::coherent_state(complex(0.0, INFINITY), 4), std::invalid_argument);
}

TEST(fock, fock_vector_rejects_empty_and_nonfinite) {
  EXPECT_THROW(FockVector(std::size_t{0}), std::invalid_argument);
  EXPECT_THROW(FockVector(std::vector<complex>{}), std::invalid_argument);
  EXPECT_THROW(FockVector(std::vector<complex>{1.0, complex(NAN, 0)}), std::invalid_argument);
}

TEST(fock, inner_product_basics) {
  const FockVector v(std::vector<complex>{{1, 2}, {0, -1}, {3, 0.5}});
  const auto self = kaleido::inner_product(v, v);
  EXPECT_EQ(self.imag(), 0.0);
  EXPECT_DOUBLE_EQ(self.real(), v.norm_squared());

  const auto a = kaleido::coherent_state(1.0, 32);
  const auto b = kaleido::coherent_state(-1.0, 32);
  EXPECT_NEAR(std::abs(kaleido::inner_product(a, a) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(kaleido::inner_product(a, b) - 0.13533528323661269), 0.0, 1e-10);
}

TEST(fock, inner_product_is_conjugate_symmetric) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<complex> u(9), v(9);
    for (auto& z : u) z = {g(rng), g(rng)};
    for (auto& z : v) z = {g(rng), g(rng)};
    const FockVector fu(u), fv(v);
    const auto uv = kaleido::inner_product(fu, fv);
    const auto vu = kaleido::inner_product(fv, fu);
    EXPECT_NEAR(std::abs(uv - std::conj(vu)), 0.0, 1e-13);
  }
}

TEST(fock, inner_product_dimension_mismatch) {
  EXPECT_THROW(kaleido::inner_product(FockVector(3), FockVector(4)), kaleido::DimensionMismatch);
}

TEST(fock, closed_overlap_values) {
  EXPECT_NEAR(std::abs(kaleido::coherent_overlap_closed({0.3, -1.1}, {0.3, -1.1}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(kaleido::coherent_overlap_closed(1.0, -1.0).real(), std::exp(-2.0), 1e-16);
  EXPECT_THROW(kaleido::coherent_overlap_closed(complex(NAN, 0), 1.0), std::invalid_argument);
}

TEST(fock, closed_overlap_matches_truncated_inner_product) {
  const auto grid = alpha_grid();
  for (const auto a : grid)
    for (const auto b : grid) {
      const auto closed = kaleido::coherent_overlap_closed(a, b);
      const auto fock = kaleido::inner_product(kaleido::coherent_state(a, 64), kaleido::coherent_state(b, 64));
      EXPECT_LT(std::abs(closed - fock), 1e-10) << a << " " << b;
      EXPECT_LE(std::abs(closed), 1.0 + 1e-15);
    }
}

TEST(fock, rotated_overlap_special_cases) {
  EXPECT_EQ(kaleido::rotated_overlap({1.3, 0.2}, 5, 3, 3), complex(1.0));
  EXPECT_NEAR(std::abs(kaleido::rotated_overlap(1.0, 2, 0, 1) - std::exp(-2.0)), 0.0, 1e-16);
  EXPECT_THROW(kaleido::rotated_overlap(1.0, 3, 0, 3), std::out_of_range);
  EXPECT_THROW(kaleido::rotated_overlap(1.0, 3, -1, 0), std::out_of_range);
  EXPECT_THROW(kaleido::rotated_overlap(1.0, 0, 0, 0), std::invalid_argument);
}

TEST(fock, rotated_overlap_is_the_closed_form_after_substitution) {
  for (int n = 1; n <= 9; ++n)
    for (const auto alpha : alpha_grid())
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const auto direct = kaleido::rotated_overlap(alpha, n, k, l);
          const auto substituted =
              kaleido::coherent_overlap_closed(kaleido::q2_power(n, k) * alpha, kaleido::q2_power(n, l) * alpha);
          EXPECT_LT(std::abs(direct - substituted), 1e-14);
        }
}

TEST(fock, annihilate_examples) {
  const auto vac = kaleido::annihilate(FockVector::number_state(5, 0));
  EXPECT_EQ(vac.norm_squared(), 0.0);
  const auto one = kaleido::annihilate(FockVector::number_state(5, 1));
  EXPECT_EQ(one[0], complex(1.0));
  EXPECT_EQ(one.norm_squared(), 1.0);
}

TEST(fock, coherent_state_is_annihilation_eigenstate) {
  for (const auto alpha : alpha_grid()) {
    const auto v = kaleido::coherent_state(alpha, 64);
    const auto residual = kaleido::annihilate(v).plus_scaled(v, -alpha);
    EXPECT_LT(residual.norm(), 1e-8) << alpha;
  }
}

TEST(fock, create_examples) {
  const auto one = kaleido::create(FockVector::number_state(4, 0));
  EXPECT_EQ(one[1], complex(1.0));
  EXPECT_EQ(one.norm_squared(), 1.0);
  const auto two = kaleido::create(one).scaled(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(std::abs(two[2] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(two.norm_squared(), 1.0, 1e-15);
}

TEST(fock, create_reports_dropped_weight) {
  const auto top = FockVector::number_state(4, 3);
  EXPECT_EQ(kaleido::create(top).norm_squared(), 0.0);
  EXPECT_DOUBLE_EQ(kaleido::create_truncation_loss(top), 4.0);
  EXPECT_EQ(kaleido::create_truncation_loss(FockVector::number_state(4, 2)), 0.0);
}

TEST(fock, ladder_operators_are_adjoint_below_truncation) {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<complex> u(12), v(12);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) u[i] = {g(rng), g(rng)};
    for (auto& z : v) z = {g(rng), g(rng)};
    const FockVector fu(u), fv(v);
    // Direct summation of <a^dag u | v> and <u | a v>.
    const auto lhs = kaleido::inner_product(kaleido::create(fu), fv);
    const auto rhs = kaleido::inner_product(fu, kaleido::annihilate(fv));
    EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(fock, canonical_commutator_below_truncation) {
  std::mt19937 rng(13);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<complex> amps(10);
    for (std::size_t i = 0; i + 1 < amps.size(); ++i) amps[i] = {g(rng), g(rng)};
    const FockVector v(amps);
    const auto aad = kaleido::annihilate(kaleido::create(v));
    const auto ada = kaleido::create(kaleido::annihilate(v));
    const auto commutator = aad.plus_scaled(ada, -1.0);
    EXPECT_LT(commutator.plus_scaled(v, -1.0).norm(), 1e-12);
  }
}

TEST(fock, truncation_dim_examples) {
  EXPECT_EQ(kaleido::truncation_dim(0.0, 0.5), 1u);
  EXPECT_EQ(kaleido::truncation_dim(0.0, 1e-15), 1u);
  // Frozen from an independent high-precision tail sum.
  EXPECT_EQ(kaleido::truncation_dim(2.0, 1e-12), 26u);
  EXPECT_EQ(kaleido::truncation_dim(1.0, 1e-14), 17u);
  EXPECT_EQ(kaleido::truncation_dim(0.3, 1e-14), 9u);
  EXPECT_EQ(kaleido::truncation_dim({0.0, 2.5}, 1e-14), 34u);
  EXPECT_THROW(kaleido::truncation_dim(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(kaleido::truncation_dim(1.0, 1.0), std::invalid_argument);
}

TEST(fock, truncation_dim_matches_forward_tail_oracle) {
  for (double a : {0.1, 0.5, 1.0, 1.7, 2.0, 3.0, 4.0})
    for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
      const auto dim = kaleido::truncation_dim(a, eps);
      EXPECT_EQ(static_cast<int>(dim), oracle::truncation_dim(a * a, eps)) << a << " " << eps;
    }
}

TEST(fock, truncation_dim_is_monotone_in_eps) {
  for (double a : {0.3, 1.0, 2.0, 3.5}) {
    std::size_t previous = 0;
    for (double eps : {0.5, 1e-3, 1e-6, 1e-9, 1e-12, 1e-14}) {
      const auto dim = kaleido::truncation_dim(a, eps);
      EXPECT_GE(dim, previous);
      previous = dim;
    }
  }
}

TEST(fock, truncated_coherent_norm_on_grid) {
  for (const auto alpha : alpha_grid()) {
    const auto dim = kaleido::truncation_dim(alpha, 1e-14);
    EXPECT_LT(std::abs(kaleido::coherent_state(alpha, dim).norm_squared() - 1.0), 1e-12);
  }
}
