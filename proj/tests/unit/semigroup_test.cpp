#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ulpar/error.hpp"
#include "ulpar/norms.hpp"
#include "ulpar/operator.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/spectral.hpp"

using namespace ulpar;
using ulpar::testing::constant_mode;
using ulpar::testing::random_field;
using ulpar::testing::rel_diff;

namespace {

const Grid1D kGrid(8.0, 64);

EvolutionOperator variable_operator(double amp = 0.3, double l2 = 0.0) {
  Coefficients c;
  for (std::size_t k = 0; k < kGrid.size(); ++k) c.a.push_back(1.0 + amp * std::cos(M_PI * kGrid.x(k) / 4.0));
  if (l2 != 0.0) c.l2.assign(kGrid.size(), l2);
  return assemble(kGrid, make_dirichlet_laplacian(2, 1.0), c);
}

double flat(const Field& u) { return flat_norm(u, 2.0); }

}  // namespace

TEST(Assemble, ConstantCoefficientsGiveDiagonalSymbols) {
  const auto B = make_dirichlet_laplacian(3, M_PI);
  const auto op = assemble(kGrid, B);
  EXPECT_FALSE(op.perturbed());
  for (std::size_t m = 0; m < kGrid.spectrum_size(); ++m)
    for (std::size_t j = 0; j < 3; ++j) {
      const double k = kGrid.wavenumber(m);
      EXPECT_NEAR(op.symbols()[m * 3 + j], k * k + B.eigenvalue(j), 1e-12);
    }
  const Field u = random_field(kGrid, 3, 4);
  EXPECT_EQ(flat(op.apply_P(u)), 0.0);
}

TEST(Assemble, ReportsEllipticityConstant) {
  const Grid1D g(8.0, 256);
  Coefficients c;
  for (std::size_t k = 0; k < g.size(); ++k) c.a.push_back(1.0 + 0.5 * std::sin(2.0 * M_PI * g.x(k) / 8.0));
  const auto op = assemble(g, make_dirichlet_laplacian(1, 1.0), c);
  EXPECT_NEAR(op.m_a(), 0.5, 1e-12);
  EXPECT_TRUE(op.perturbed());
}

TEST(Assemble, DegenerateDiffusionRejected) {
  const Grid1D g(8.0, 256);
  Coefficients c;
  for (std::size_t k = 0; k < g.size(); ++k) c.a.push_back(1.0 + std::sin(2.0 * M_PI * g.x(k) / 8.0));
  try {
    assemble(g, make_dirichlet_laplacian(1, 1.0), c);
    FAIL() << "expected an ellipticity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Ellipticity);
  }
}

TEST(Assemble, DeclaredBoundViolationNamesHypothesis) {
  Coefficients c;
  c.a.assign(kGrid.size(), 2.0);
  DeclaredBounds b;
  b.M_a = 1.5;
  try {
    assemble(kGrid, make_dirichlet_laplacian(1, 1.0), c, b);
    FAIL() << "expected a hypothesis error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Hypothesis);
  }
}

TEST(Resolvent, ScalarDiagonalCase) {
  // Symbol 5 on a constant field: the coefficient is divided by -1 + 5.
  const auto op = assemble(kGrid, make_bounded_identity(1, 1.0, 5.0));
  const Field u = constant_mode(kGrid, 1, 0, 2.0);
  const Field v = resolvent_apply(op, -1.0, u);
  for (std::size_t k = 0; k < kGrid.size(); ++k) EXPECT_NEAR(v(k, 0), 0.5, 1e-14);
}

TEST(Resolvent, FarFieldIsNeumannLeadingTerm) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  const Field u = random_field(kGrid, 2, 8);
  const double z = 1e8;
  const Field v = resolvent_apply(op, z, u);
  EXPECT_LE(rel_diff(v, (1.0 / z) * u), 2.0 * op.symbol_max() / z);
}

TEST(Resolvent, VariableCoefficientResidual) {
  const auto op = variable_operator();
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Field u = random_field(kGrid, 2, s);
    for (double z : {0.5, 10.0}) {
      const Field v = resolvent_apply(op, z, u);
      const Field res = axpy(op.apply(v), z, v) - u;
      EXPECT_LE(flat(res), 1.05e-10 * flat(u)) << "seed " << s << " z " << z;
    }
  }
}

TEST(ResolventProperty, ResolventIdentity) {
  const auto op = variable_operator(0.2, 0.3);
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Field u = random_field(kGrid, 2, 40 + s);
    const double z1 = 0.7, z2 = 3.0;
    ResolventOptions tight;
    tight.tol = 1e-13;
    const Field lhs = resolvent_apply(op, z1, u, tight) - resolvent_apply(op, z2, u, tight);
    const Field rhs = (z2 - z1) * resolvent_apply(op, z1, resolvent_apply(op, z2, u, tight), tight);
    EXPECT_LE(rel_diff(lhs, rhs), 1e-9) << "seed " << s;
  }
}

TEST(Sectorial, SelfAdjointWithinDistanceBound) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  SectorParams sp;
  sp.phi = M_PI / 4;
  sp.M = std::sqrt(2.0) + 1e-6;
  const auto r = verify_sectorial(op, sp, 40, 5);
  EXPECT_TRUE(r.pass) << r.failure << " M_observed " << r.M_observed;
  EXPECT_LE(r.M_observed, std::sqrt(2.0) + 1e-6);
}

TEST(Sectorial, NegativeAxisNormIsDistanceToSpectrum) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  const double lmin = op.symbol_min();
  for (double r : {0.1, 1.0, 10.0}) {
    const double n = resolvent_norm(op, cplx(-r, 0.0), 3, 60);
    EXPECT_LE(n, (1.0 + 1e-9) / (r + lmin));
    EXPECT_GE(n, 0.99 / (r + lmin));
    EXPECT_LT(n, 1.0 / r);
  }
}

TEST(Sectorial, AdvectivePerturbationStableUnderSampleDoubling) {
  const auto op = variable_operator(0.1, 0.2);
  SectorParams sp;
  sp.phi = M_PI / 4;
  sp.M = 1e6;
  const auto a = verify_sectorial(op, sp, 24, 7);
  const auto b = verify_sectorial(op, sp, 48, 7);
  ASSERT_TRUE(std::isfinite(a.M_observed));
  EXPECT_NEAR(b.M_observed, a.M_observed, 0.05 * a.M_observed);
}

TEST(SemigroupExact, SingleSymbolDecay) {
  const auto op = assemble(kGrid, make_bounded_identity(1, 1.0, 5.0));
  const Field v = semigroup_exact(op, 0.2, constant_mode(kGrid, 1, 0));
  for (std::size_t k = 0; k < kGrid.size(); ++k) EXPECT_NEAR(v(k, 0), std::exp(-1.0), 1e-14);
}

TEST(SemigroupExact, ZeroTimeIsIdentityAndNegativeRejected) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(3, 1.0));
  const Field u = random_field(kGrid, 3, 2);
  EXPECT_LE(rel_diff(semigroup_exact(op, 0.0, u), u), 1e-13);
  EXPECT_THROW(semigroup_exact(op, -1e-3, u), Error);
}

TEST(SemigroupProperty, SemigroupLawExact) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(3, 2.0));
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Field u = random_field(kGrid, 3, s);
    const Field a = semigroup_exact(op, 0.3, semigroup_exact(op, 0.45, u));
    EXPECT_LE(rel_diff(a, semigroup_exact(op, 0.75, u)), 1e-12) << "seed " << s;
  }
}

TEST(SemigroupProperty, SmoothingBound) {
  // Self-adjoint and positive: |A exp(-At)| <= sup_s s exp(-s) / t = 1 / (e t).
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const Field u = random_field(kGrid, 2, s);
    for (double t : log_grid(1e-4, 1.0, 9))
      EXPECT_LE(t * flat(op.apply(semigroup_exact(op, t, u))), (1.0 / M_E + 1e-12) * flat(u));
  }
}

TEST(SemigroupProperty, HeatAndTransverseFactorsCommute) {
  const auto B = make_dirichlet_laplacian(3, 1.0);
  const auto op = assemble(kGrid, B);
  const auto heat = assemble(kGrid, make_bounded_identity(3, 1.0, 0.0));
  const Field u = random_field(kGrid, 3, 9);
  auto transverse = [&](const Field& f) {
    return Field::from_function(kGrid, 3, [&](double x, std::size_t j) {
      const std::size_t k = static_cast<std::size_t>(std::llround((x + kGrid.half_length()) / kGrid.dx()));
      return std::exp(-0.1 * B.eigenvalue(j)) * f(k, j);
    });
  };
  const Field a = transverse(semigroup_exact(heat, 0.1, u));
  const Field b = semigroup_exact(heat, 0.1, transverse(u));
  EXPECT_LE(rel_diff(a, b), 1e-14);
  EXPECT_LE(rel_diff(a, semigroup_exact(op, 0.1, u)), 1e-13);
}

TEST(Contour, MatchesExactMultipliers) {
  const Grid1D g(8.0, 64);
  const auto op = assemble(g, make_dirichlet_laplacian(4, 1.0));
  const Field u = random_field(g, 4, 12);
  ContourSpec spec;
  spec.nodes = 64;
  EXPECT_LE(rel_diff(semigroup_contour(op, 0.1, u, spec), semigroup_exact(op, 0.1, u)), 1e-6);
  EXPECT_THROW(semigroup_contour(op, 0.0, u, spec), Error);
}

TEST(Contour, LinearAndSemigroupConsistent) {
  // The iterative solves are linear only up to their residual tolerance, so tighten it.
  for (const auto& op : {assemble(kGrid, make_dirichlet_laplacian(2, 1.0)), variable_operator(0.2)}) {
    const Field u = random_field(kGrid, 2, 1), v = random_field(kGrid, 2, 2);
    ContourSpec spec;
    spec.nodes = 48;
    spec.resolvent.tol = 1e-14;
    const Field lhs = semigroup_contour(op, 0.2, axpy(2.0 * u, -3.0, v), spec);
    const Field rhs = axpy(2.0 * semigroup_contour(op, 0.2, u, spec), -3.0, semigroup_contour(op, 0.2, v, spec));
    EXPECT_LE(rel_diff(lhs, rhs), 1e-12);
    const Field twice = semigroup_contour(op, 0.2, semigroup_contour(op, 0.2, u, spec), spec);
    EXPECT_LE(rel_diff(twice, semigroup_contour(op, 0.4, u, spec)), 1e-6);
  }
}

TEST(Contour, ErrorShrinksWithNodeDoubling) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  const Field u = random_field(kGrid, 2, 3);
  const Field exact = semigroup_exact(op, 0.5, u);
  double prev = 1.0;
  for (int n : {8, 16, 32}) {
    ContourSpec spec;
    spec.nodes = n;
    const double e = rel_diff(semigroup_contour(op, 0.5, u, spec), exact);
    EXPECT_LT(e, 0.5 * prev) << "nodes " << n;
    prev = e;
  }
}

namespace {

// max over s > 0 of (1 - e^{-s}) / s^theta by golden-section search on log s.
double g_star(double theta) {
  auto f = [theta](double ls) {
    const double s = std::exp(ls);
    return -std::expm1(-s) / std::pow(s, theta);
  };
  double a = -10.0, b = 10.0;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < 200; ++i) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (f(c) > f(d)) b = d;
    else a = c;
  }
  return f(0.5 * (a + b));
}

}  // namespace

TEST(IntermediateNorm, EigenvectorMatchesGoldenSectionOracle) {
  EXPECT_NEAR(g_star(0.5), 0.638, 1e-3);
  const auto op = assemble(kGrid, make_bounded_identity(1, 1.0, 5.0));
  const Field u = constant_mode(kGrid, 1, 0);
  const auto r = intermediate_norm(op, 0.5, u, log_grid(1e-6, 1e2, 4000));
  EXPECT_NEAR(r.sup_term / r.base, std::sqrt(5.0) * g_star(0.5), 1e-5);
  EXPECT_NEAR(r.small_t_slope, 1.0, 0.05);
}

TEST(IntermediateNorm, ZeroField) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(1, 1.0));
  const auto r = intermediate_norm(op, 0.5, Field(kGrid, 1), default_t_grid());
  EXPECT_EQ(r.value, 0.0);
}

TEST(IntermediateNorm, SmoothDataHasUnitSlope) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  const Field u = Field::from_function(kGrid, 2, [](double x, std::size_t j) {
    return std::exp(-x * x) / static_cast<double>(j + 1);
  });
  EXPECT_GE(default_t_grid().size(), 40u);
  EXPECT_NEAR(intermediate_norm(op, 0.5, u, default_t_grid()).small_t_slope, 1.0, 0.05);
}

TEST(UlOperatorCheck, TranslationInvariantForConstantField) {
  const Grid1D g(16.0, 256);
  const auto op = assemble(g, make_dirichlet_laplacian(2, 1.0));
  const auto r = ul_operator_check(op, constant_mode(g, 2, 0), 1.0, lattice_centers(g, 0.5));
  EXPECT_NEAR(r.ratio, 1.0, 1e-10);
}

TEST(UlOperatorCheck, BumpMaximizedNearCenter) {
  const Grid1D g(16.0, 512);
  const auto op = assemble(g, make_dirichlet_laplacian(2, 1.0));
  const Field u = Field::from_function(g, 2, [](double x, std::size_t j) {
    return j == 0 ? std::exp(-4.0 * (x - 3.0) * (x - 3.0)) : 0.0;
  });
  const auto r = ul_operator_check(op, u, 1.0, lattice_centers(g, 0.25));
  EXPECT_NEAR(r.x_theta.argmax_center, 3.0, 0.5);
}

TEST(UlOperatorCheck, ZeroPowerIsSupWeighted) {
  const Grid1D g(16.0, 256);
  const auto op = assemble(g, make_dirichlet_laplacian(2, 1.0));
  const Field u = random_field(g, 2, 6);
  const auto centers = lattice_centers(g, 0.5);
  const auto x = x_theta_norm(op, 0.0, u, 1.0, centers);
  EXPECT_NEAR(x.value, sup_weighted_norm(u, 2.0, 1.0, centers).value, 1e-12 * x.value);
}

TEST(UlOperatorCheck, ShiftMustMakeSpectrumPositive) {
  const auto op = assemble(kGrid, make_bounded_identity(1, 1.0, 0.0));
  try {
    x_theta_norm(op, 0.5, constant_mode(kGrid, 1, 0), 1.0, {0.0}, -1.0);
    FAIL() << "expected a shift error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Shift);
  }
}

TEST(IntegratedIdentity, DefectIsSmall) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(3, 1.0));
  for (std::uint64_t s = 1; s <= 5; ++s)
    for (double t : {0.1, 1.0}) EXPECT_LE(integrated_identity_defect(op, t, random_field(kGrid, 3, s)), 1e-8);
}
