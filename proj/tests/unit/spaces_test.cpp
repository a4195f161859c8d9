#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ulpar/error.hpp"
#include "ulpar/norms.hpp"
#include "ulpar/snapshot.hpp"
#include "ulpar/spectral.hpp"
#include "ulpar/transverse.hpp"
#include "ulpar/weight.hpp"

using namespace ulpar;
using ulpar::testing::constant_mode;
using ulpar::testing::random_field;

namespace {

const Grid1D kGrid(8.0, 256);  // dx = 1/16, the unit window is exact

}  // namespace

TEST(UlNorm, ConstantModeGivesSqrtTwo) {
  EXPECT_NEAR(ul_norm(constant_mode(kGrid, 3, 0)), std::sqrt(2.0), 1e-13);
}

TEST(UlNorm, ZeroField) { EXPECT_EQ(ul_norm(Field(kGrid, 2)), 0.0); }

TEST(UlNorm, SineMatchesAntiderivativeOracle) {
  const Grid1D g(8.0 * M_PI, 4096);
  const Field u = Field::from_function(g, 1, [](double x, std::size_t) { return std::sin(x); });
  // Window of half width h: max over centers of h + sin(2h)/2, attained at a = pi/2.
  const double h = static_cast<double>(g.window_half_width()) * g.dx();
  const double oracle = std::sqrt(h + 0.5 * std::sin(2.0 * h));
  EXPECT_NEAR(ul_norm(u), oracle, 1e-4 * oracle);
  EXPECT_NEAR(oracle, std::sqrt(1.0 + 0.5 * std::sin(2.0)), 5e-3);
}

TEST(UlNorm, WindowWiderThanDomainRejected) {
  try {
    Grid1D g(4.0, 64);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainTooSmall);
  }
}

TEST(UlNorm, TransversePowerNeedsOperator) {
  try {
    ul_norm(constant_mode(kGrid, 2, 0), 2.0, 0.5, nullptr);
    FAIL() << "expected a missing operator error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingOperator);
  }
}

TEST(UlNorm, TransversePowerScalesByEigenvalue) {
  const auto B = make_dirichlet_laplacian(3, M_PI);
  const Field u = constant_mode(kGrid, 3, 2);
  EXPECT_NEAR(ul_norm(u, 2.0, 0.5, &B), 3.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(ul_norm(u, 2.0, 1.0, &B), 9.0 * std::sqrt(2.0), 1e-11);
}

TEST(UlNorm, SobolevSumsDerivativeNorms) {
  const Grid1D g(8.0, 512);
  const double k = M_PI / 8.0;
  const Field u = Field::from_function(g, 1, [k](double x, std::size_t) { return std::sin(k * x); });
  const double expect = ul_norm(u) + ul_norm(derivative(u, 1)) + ul_norm(derivative(u, 2));
  EXPECT_NEAR(sobolev_ul_norm(u, 2), expect, 1e-12 * expect);
}

TEST(UlNormProperty, HomogeneityAndTriangle) {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    const Field u = random_field(kGrid, 3, s), v = random_field(kGrid, 3, 1000 + s);
    for (double p : {1.0, 2.0, 3.0, kInf}) {
      const double nu = ul_norm(u, p), nv = ul_norm(v, p);
      EXPECT_NEAR(ul_norm(-2.5 * u, p), 2.5 * nu, 1e-12 * nu) << "seed " << s << " p " << p;
      EXPECT_LE(ul_norm(u + v, p), (nu + nv) * (1.0 + 1e-12)) << "seed " << s << " p " << p;
    }
  }
}

TEST(UlNormProperty, BoundedByFullDomainNorm) {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const Field u = random_field(kGrid, 2, s);
    for (double p : {1.0, 2.0, 4.0}) EXPECT_LE(ul_norm(u, p), flat_norm(u, p) * (1.0 + 1e-12));
  }
  // Constant fields: the window picks up exactly window length 2 out of the period 16.
  const Field c = constant_mode(kGrid, 2, 1, 3.0);
  EXPECT_NEAR(ul_norm(c), flat_norm(c, 2.0) * std::sqrt(2.0 / 16.0), 1e-12);
}

TEST(UlNormProperty, TranslationIsometry) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Field u = random_field(kGrid, 2, s);
    const double base = ul_norm(u);
    for (long shift : {1L, 7L, -33L, 128L}) EXPECT_NEAR(ul_norm(u.shifted(shift)), base, 1e-12 * base);
  }
}

TEST(WeightedNorm, ConstantMatchesIntegralOracle) {
  const Grid1D g(40.0, 4096);
  const Field u = constant_mode(g, 2, 0);
  // Oracle: composite Simpson on a grid 16 times finer over the period.
  const std::size_t n = 16 * 4096;
  const double h = 80.0 / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = -40.0 + static_cast<double>(i) * h;
    const double f = 1.0 / std::cosh(std::sqrt(1.0 + x * x));
    sum += f * ((i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  const double oracle = std::sqrt(sum * h / 3.0);
  EXPECT_NEAR(weighted_norm(u, 2.0, Weight(1.0, 0.0)), oracle, 1e-10);
}

TEST(WeightedNorm, ZeroAndHomogeneity) {
  const Weight w(0.5, 2.0);
  EXPECT_EQ(weighted_norm(Field(kGrid, 2), 2.0, w), 0.0);
  const Field u = random_field(kGrid, 2, 7);
  EXPECT_NEAR(weighted_norm(3.0 * u, 2.0, w), 3.0 * weighted_norm(u, 2.0, w), 1e-12);
}

TEST(SupWeighted, ConstantLiesInSandwich) {
  const Grid1D g(16.0, 512);
  const auto centers = lattice_centers(g, 0.5);
  const Field u = constant_mode(g, 1, 0);
  const auto r = sup_weighted_norm(u, 2.0, 1.0, centers);
  const double ul = ul_norm(u);
  EXPECT_GE(r.value, r.c1 * ul * (1.0 - 1e-10));
  EXPECT_LE(r.value, r.c2 * ul * (1.0 + 1e-10));
}

TEST(SupWeighted, ZeroBothSides) {
  const auto centers = lattice_centers(kGrid, 0.5);
  EXPECT_EQ(sup_weighted_norm(Field(kGrid, 1), 2.0, 1.0, centers).value, 0.0);
}

TEST(SupWeighted, BumpMaximizedNearItsCenter) {
  const Grid1D g(16.0, 1024);
  const Field u = Field::from_function(g, 1, [](double x, std::size_t) { return std::exp(-50.0 * x * x); });
  const auto r = sup_weighted_norm(u, 2.0, 1.0, lattice_centers(g, 0.25));
  EXPECT_LE(std::abs(r.argmax_center), 0.25);
}

TEST(SupWeighted, EmptyCentersRejected) {
  EXPECT_THROW(sup_weighted_norm(constant_mode(kGrid, 1, 0), 2.0, 1.0, {}), Error);
}

TEST(SupWeightedProperty, SandwichOnRandomFields) {
  const Grid1D g(16.0, 512);
  const auto centers = lattice_centers(g, 0.5);
  for (double mu : {0.5, 1.0, 2.0}) {
    for (std::uint64_t s = 1; s <= 25; ++s) {
      const Field u = random_field(g, 2, s);
      const auto r = sup_weighted_norm(u, 2.0, mu, centers);
      const double ul = ul_norm(u);
      EXPECT_GE(r.value, r.c1 * ul * (1.0 - 1e-10)) << "mu " << mu << " seed " << s;
      EXPECT_LE(r.value, r.c2 * ul * (1.0 + 1e-10)) << "mu " << mu << " seed " << s;
    }
  }
}

TEST(WeightProperty, DerivativeBounds) {
  const Grid1D g(16.0, 2048);
  for (double mu : {0.1, 0.5, 1.0, 2.0}) {
    const Weight w(mu, 1.3);
    for (std::size_t k = 0; k < g.size(); k += 3) {
      const double x = g.x(k), rho = w.value(g, x);
      EXPECT_LE(std::abs(w.derivative(g, x)), mu * rho * (1.0 + 1e-12));
      EXPECT_LE(std::abs(w.second_derivative(g, x)), (2.0 * mu * mu + mu) * rho * (1.0 + 1e-12));
    }
    // Finite-difference check of the analytic derivative away from the periodic seam.
    const double h = 1e-5;
    for (double x : {-3.0, 0.0, 1.3, 2.0, 7.5}) {
      const double fd = (w.value(g, x + h) - w.value(g, x - h)) / (2.0 * h);
      EXPECT_NEAR(fd, w.derivative(g, x), 1e-6);
      const double fd2 = (w.derivative(g, x + h) - w.derivative(g, x - h)) / (2.0 * h);
      EXPECT_NEAR(fd2, w.second_derivative(g, x), 1e-6);
    }
  }
}

TEST(TranslationModulus, SineIsLinearInShift) {
  const Grid1D g(8.0 * M_PI, 4096);
  const Field u = Field::from_function(g, 1, [](double x, std::size_t) { return std::sin(x); });
  const std::vector<double> shifts = {g.dx(), 2.0 * g.dx(), 4.0 * g.dx(), 8.0 * g.dx()};
  const auto c = translation_modulus(u, 2.0, shifts);
  // u - u(. - xi) = 2 sin(xi/2) cos(x - xi/2), so the modulus is 2 |sin(xi/2)| times the ul norm of cos.
  const Field cosine = Field::from_function(g, 1, [](double x, std::size_t) { return std::cos(x); });
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const double expect = 2.0 * std::sin(0.5 * shifts[i]) * ul_norm(cosine);
    EXPECT_NEAR(c.values[i], expect, 2e-3 * expect);
  }
  EXPECT_TRUE(c.ul_s_candidate);
}

TEST(TranslationModulus, ConstantIsZero) {
  const auto c = translation_modulus(constant_mode(kGrid, 2, 1), 2.0, {kGrid.dx(), 3.0 * kGrid.dx()});
  for (double v : c.values) EXPECT_EQ(v, 0.0);
}

TEST(TranslationModulus, NonCommensurateShiftRejected) {
  EXPECT_THROW(translation_modulus(constant_mode(kGrid, 1, 0), 2.0, {0.3 * kGrid.dx()}), Error);
}

TEST(TranslationModulus, ChirpStaysAwayFromZeroUnderRefinement) {
  for (std::size_t n : {8192u, 16384u}) {
    const double L = n == 8192u ? 40.0 : 80.0;
    const Grid1D g(L, n);
    const Field u = Field::from_function(g, 1, [](double x, std::size_t) { return std::sin(x * x); });
    const auto c = translation_modulus(u, 2.0, {g.dx()});
    EXPECT_GT(c.values[0], 0.1 * ul_norm(u)) << "n " << n;
    EXPECT_FALSE(c.ul_s_candidate);
  }
}

TEST(Snapshot, RoundTripIsExact) {
  const Grid1D g(8.0, 64);
  const Field u = random_field(g, 3, 11, 1e-3) + Field::from_function(g, 3, [](double x, std::size_t j) {
                    return std::exp(x) * static_cast<double>(j + 1) / 3.0;
                  });
  std::stringstream ss;
  write_snapshot(ss, u, 0.1 + 0.2);
  const Snapshot s = read_snapshot(ss);
  EXPECT_EQ(s.time, 0.1 + 0.2);
  ASSERT_TRUE(s.field.same_shape(u));
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(s.field.data()[i], u.data()[i]);
}

TEST(Snapshot, MalformedInputRejected) {
  std::stringstream ss("not a snapshot\n");
  EXPECT_THROW(read_snapshot(ss), Error);
}

TEST(Spectral, DerivativeOfSine) {
  const Grid1D g(8.0, 256);
  const double k = 3.0 * M_PI / 8.0;
  const Field u = Field::from_function(g, 2, [k](double x, std::size_t j) { return std::sin(k * x + j); });
  const Field du = derivative(u, 1);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(du(i, j), k * std::cos(k * g.x(i) + j), 1e-12);
}

TEST(Spectral, ForwardInverseRoundTrip) {
  const Field u = random_field(kGrid, 3, 5);
  EXPECT_LT(ulpar::testing::rel_diff(inverse(forward(u)), u), 1e-14);
}
