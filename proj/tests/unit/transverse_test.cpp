#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ulpar/error.hpp"
#include "ulpar/transverse.hpp"

using namespace ulpar;

TEST(Dirichlet, ClassicalSpectrum) {
  const auto B = make_dirichlet_laplacian(3, M_PI);
  ASSERT_EQ(B.modes(), 3u);
  EXPECT_NEAR(B.eigenvalue(0), 1.0, 1e-14);
  EXPECT_NEAR(B.eigenvalue(1), 4.0, 1e-14);
  EXPECT_NEAR(B.eigenvalue(2), 9.0, 1e-13);
  EXPECT_NEAR(make_dirichlet_laplacian(1, M_PI / 2).eigenvalue(0), 4.0, 1e-13);
  EXPECT_TRUE(B.compact_resolvent());
}

TEST(Dirichlet, EigenfunctionsOrthonormalByQuadrature) {
  const auto B = make_dirichlet_laplacian(6, 2.5);
  const auto& q = B.quadrature();
  const std::size_t M = B.modes();
  for (std::size_t a = 0; a < M; ++a)
    for (std::size_t b = 0; b < M; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * q.basis[i * M + a] * q.basis[i * M + b];
      EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-12) << a << ' ' << b;
    }
  EXPECT_NEAR(B.eigenfunction(0, 0.7), std::sqrt(2.0 / 2.5) * std::sin(M_PI * 0.7 / 2.5), 1e-14);
}

TEST(Fractional, PowersOfTheBaseSpectrum) {
  const auto base = make_dirichlet_laplacian(3, M_PI);
  const auto same = make_fractional(base, 2.0);
  const auto sq = make_fractional(base, 4.0);
  const auto root = make_fractional(base, 1.0);
  for (std::size_t j = 0; j < 3; ++j) {
    const double l = base.eigenvalue(j);
    EXPECT_NEAR(same.eigenvalue(j), l, 1e-13);
    EXPECT_NEAR(sq.eigenvalue(j), l * l, 1e-12);
    EXPECT_NEAR(root.eigenvalue(j), static_cast<double>(j + 1), 1e-13);
  }
  EXPECT_THROW(make_fractional(base, 0.0), Error);
}

TEST(Advective, ZeroPotentialMatchesDirichlet) {
  const std::size_t n = 1024;
  const double ell = 2.0;
  const auto B = make_advective(4, ell, std::vector<double>(33, 0.0), n);
  const double h = ell / static_cast<double>(n + 1);
  for (std::size_t j = 0; j < 4; ++j) {
    const double jj = static_cast<double>(j + 1);
    // Exact eigenvalues of the three-point Laplacian.
    const double discrete = 4.0 / (h * h) * std::pow(std::sin(jj * M_PI * h / (2.0 * ell)), 2);
    EXPECT_NEAR(B.eigenvalue(j), discrete, 1e-9 * discrete);
    const double continuum = std::pow(jj * M_PI / ell, 2);
    // Leading truncation error of the three-point stencil: (j pi h / l)^2 / 12 relative.
    const double bound = std::pow(jj * M_PI * h / ell, 2) / 12.0;
    EXPECT_NEAR(B.eigenvalue(j), continuum, 1.01 * bound * continuum);
  }
}

TEST(Advective, LinearPotentialMatchesSchrodingerForm) {
  // With W(y) = y, v = exp(W/2) u solves -v'' + v/4, so lambda_j = j^2 + 1/4 on [0, pi].
  std::vector<double> W(129);
  for (std::size_t i = 0; i < W.size(); ++i) W[i] = M_PI * static_cast<double>(i) / 128.0;
  const auto B = make_advective(3, M_PI, W, 2048);
  for (std::size_t j = 0; j < 3; ++j) {
    const double jj = static_cast<double>(j + 1);
    EXPECT_NEAR(B.eigenvalue(j), jj * jj + 0.25, 2e-6 * (jj * jj + 0.25));
  }
}

TEST(Advective, ModesOrthonormalInWeightedProduct) {
  std::vector<double> W(65);
  for (std::size_t i = 0; i < W.size(); ++i) W[i] = 0.8 * std::cos(2.0 * M_PI * static_cast<double>(i) / 64.0);
  const auto B = make_advective(4, 1.0, W, 512);
  const auto& q = B.quadrature();
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * q.basis[i * 4 + a] * q.basis[i * 4 + b];
      EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-9);
    }
  for (std::size_t j = 1; j < 4; ++j) EXPECT_GE(B.eigenvalue(j), B.eigenvalue(j - 1));
}

TEST(ApplyPower, Examples) {
  const auto B = make_dirichlet_laplacian(1, M_PI / 2);  // lambda = 4
  const std::vector<double> v = {1.0};
  EXPECT_EQ(B.apply_power(0.0, v)[0], 1.0);
  EXPECT_NEAR(B.apply_power(0.5, v)[0], 2.0, 1e-14);
}

TEST(ApplyPowerProperty, PowerLawAndPositivity) {
  const auto B = make_dirichlet_laplacian(8, 1.7);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(8);
    for (auto& x : v) x = n01(rng);
    const double a = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    const double b = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    const auto lhs = B.apply_power(a, B.apply_power(b, v));
    const auto rhs = B.apply_power(a + b, v);
    for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(lhs[j], rhs[j], 1e-12 * std::abs(rhs[j]) + 1e-300);
    const auto Bv = B.apply_power(1.0, v);
    double dot = 0.0;
    for (std::size_t j = 0; j < 8; ++j) dot += Bv[j] * v[j];
    EXPECT_GE(dot, 0.0);
  }
}

TEST(ApplyPower, CommutesWithTransverseSemigroup) {
  const auto B = make_dirichlet_laplacian(5, 1.0);
  std::vector<double> v = {1.0, -2.0, 0.5, 3.0, -1.0};
  auto heat = [&](std::vector<double> w) {
    for (std::size_t j = 0; j < w.size(); ++j) w[j] *= std::exp(-0.01 * B.eigenvalue(j));
    return w;
  };
  const auto a = B.apply_power(0.7, heat(v));
  const auto b = heat(B.apply_power(0.7, v));
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(a[j], b[j]);
}

TEST(BoundedIdentity, NoCompactResolvent) {
  const auto B = make_bounded_identity(4, 1.0, 2.0);
  for (double l : B.eigenvalues()) EXPECT_EQ(l, 2.0);
  EXPECT_FALSE(B.compact_resolvent());
}

TEST(Shifted, AddsToEverySpectralValue) {
  const auto B = make_dirichlet_laplacian(3, M_PI).shifted(1.0);
  EXPECT_NEAR(B.eigenvalue(0), 2.0, 1e-14);
  EXPECT_NEAR(B.eigenvalue(2), 10.0, 1e-13);
}

TEST(CompactResolventFlag, EigenvaluesGrowForCompactFamilies) {
  for (std::size_t M : {4u, 16u, 64u}) {
    EXPECT_GT(make_dirichlet_laplacian(M, 1.0).eigenvalues().back(), static_cast<double>(M * M));
    EXPECT_GT(make_fractional(make_dirichlet_laplacian(M, 1.0), 1.0).eigenvalues().back(), static_cast<double>(M));
  }
}
