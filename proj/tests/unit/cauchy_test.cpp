#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ulpar/error.hpp"
#include "ulpar/exponents.hpp"
#include "ulpar/norms.hpp"
#include "ulpar/picard.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/solver.hpp"

using namespace ulpar;
using ulpar::testing::constant_mode;
using ulpar::testing::random_field;
using ulpar::testing::rel_diff;

namespace {

const Grid1D kGrid(8.0, 64);

// Constant-in-x data on a one-mode operator with symbol eta reduces the flow to an ODE.
EvolutionOperator scalar_operator(double eta) { return assemble(kGrid, make_bounded_identity(1, 1.0, eta)); }

Nonlinearity polynomial(std::vector<double> c) {
  NonlinearityMeta meta;
  meta.degree = static_cast<int>(c.size()) - 1;
  meta.gamma = std::max(0.0, static_cast<double>(meta.degree) - 1.0);
  return Nonlinearity::mode_polynomial(std::move(c), meta);
}

Nonlinearity lipschitz_sine(double c) {
  NonlinearityMeta meta;
  meta.constant = c;
  return Nonlinearity::pointwise([c](double, double u) { return c * std::sin(u); }, meta, "sin");
}

double scalar_run(double dt, Scheme scheme, double horizon) {
  const auto op = scalar_operator(1.0);
  const auto F = polynomial({0.0, 0.0, 1.0});
  const Stepper st(op, F, dt, scheme);
  Field u = constant_mode(kGrid, 1, 0, 0.5);
  const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
  for (std::size_t i = 0; i < n; ++i) u = st.step(u);
  return u(0, 0);
}

}  // namespace

TEST(Step, LinearStepIsExactSemigroup) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(3, 1.0));
  const Field u = random_field(kGrid, 3, 1);
  for (Scheme s : {Scheme::ETD1, Scheme::ETD2RK})
    EXPECT_LE(rel_diff(step(u, 0.05, s, op, Nonlinearity::zero()), semigroup_exact(op, 0.05, u)), 1e-14);
}

TEST(Step, Etd1ExactForConstantForcing) {
  const double eta = 3.0, c = 2.0, dt = 0.1;
  const auto op = scalar_operator(eta);
  const Field u = constant_mode(kGrid, 1, 0, 0.7);
  const Field v = step(u, dt, Scheme::ETD1, op, polynomial({c}));
  const double e = std::exp(-eta * dt);
  EXPECT_NEAR(v(5, 0), e * 0.7 + (1.0 - e) * c / eta, 1e-15);
}

TEST(Step, Etd2rkSecondOrderOnLogistic) {
  // u' = -u + u^2 from 0.5 against a reference at dt / 64.
  const double T = 1.0;
  const std::vector<double> dts = {0.1, 0.05, 0.025, 0.0125};
  const double ref = scalar_run(dts.back() / 64.0, Scheme::ETD2RK, T);
  // The closed form 1 / (1 + e^t) pins the reference.
  EXPECT_NEAR(ref, 1.0 / (1.0 + std::exp(T)), 1e-8);
  std::vector<double> err;
  for (double dt : dts) err.push_back(std::abs(scalar_run(dt, Scheme::ETD2RK, T) - ref));
  for (std::size_t i = 0; i + 1 < err.size(); ++i) EXPECT_NEAR(std::log2(err[i] / err[i + 1]), 2.0, 0.1);
  std::vector<double> err1;
  for (double dt : dts) err1.push_back(std::abs(scalar_run(dt, Scheme::ETD1, T) - ref));
  for (std::size_t i = 0; i + 1 < err1.size(); ++i) EXPECT_NEAR(std::log2(err1[i] / err1[i + 1]), 1.0, 0.1);
}

TEST(Solve, HeatFlowUlNormNonincreasing) {
  const Grid1D g(16.0, 256);
  const auto op = assemble(g, make_dirichlet_laplacian(2, 1.0));
  const Field u0 = Field::from_function(g, 2, [](double x, std::size_t j) { return std::exp(-x * x) * (j + 1.0); });
  Scenario s{op, Nonlinearity::zero(), u0, Scheme::ETD2RK, 0.01, 1.0, {}, 1, 0, {}};
  s.diagnostics.push_back({"ul", [](const Field& u, double) { return ul_norm(u); }});
  const auto rec = solve(s);
  ASSERT_EQ(rec.status, Termination::completed);
  const auto ul = rec.column("ul");
  for (std::size_t i = 1; i < ul.size(); ++i) EXPECT_LE(ul[i], ul[i - 1] * (1.0 + 1e-14));
}

TEST(Solve, LinearRunMatchesSemigroupAtEveryRecord) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(3, 1.0));
  const Field u0 = random_field(kGrid, 3, 2);
  Scenario s{op, Nonlinearity::zero(), u0, Scheme::ETD2RK, 0.02, 0.4, {}, 1, 1, {}};
  const auto rec = solve(s);
  ASSERT_GT(rec.snapshots.size(), 10u);
  for (const auto& snap : rec.snapshots)
    EXPECT_LE(rel_diff(snap.field, semigroup_exact(op, snap.time, u0)), 1e-12) << "t " << snap.time;
}

TEST(Solve, EigenvectorDecaysExponentially) {
  const auto op = scalar_operator(2.0);
  Scenario s{op, Nonlinearity::zero(), constant_mode(kGrid, 1, 0), Scheme::ETD1, 0.01, 1.0, {}, 1, 0, {}};
  s.diagnostics.push_back({"value", [](const Field& u, double) { return u(0, 0); }});
  const auto rec = solve(s);
  const auto v = rec.column("value");
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], std::exp(-2.0 * rec.times[i]), 1e-12);
}

TEST(Solve, DeterministicReplay) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  const Field u0 = random_field(kGrid, 2, 5);
  Scenario s{op, polynomial({0.0, 1.0, 0.0, -1.0}), u0, Scheme::ETD2RK, 0.01, 0.5, {}, 1, 0, {}};
  const auto a = solve(s), b = solve(s);
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.back().field.size(); ++i)
    EXPECT_EQ(a.snapshots.back().field.data()[i], b.snapshots.back().field.data()[i]);
  EXPECT_EQ(a.values, b.values);
}

TEST(Solve, ContinuityAtZeroForRegularData) {
  const Grid1D g(16.0, 256);
  const auto op = assemble(g, make_dirichlet_laplacian(2, 1.0));
  const Field u0 = Field::from_function(g, 2, [](double x, std::size_t j) { return std::exp(-x * x) / (j + 1.0); });
  Scenario s{op, lipschitz_sine(1.0), u0, Scheme::ETD2RK, 1e-4, 2e-3, {}, 1, 0, {}};
  EXPECT_GE(continuity_exponent(solve(s), 10), 0.9);
}

TEST(Solve, MildSolutionAgreesWithPicardFixedPoint) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  const Field u0 = random_field(kGrid, 2, 8);
  const auto F = lipschitz_sine(0.1);
  const double dt = 1e-3, T = 0.5;
  Scenario s{op, F, u0, Scheme::ETD2RK, dt, T, {}, 1, 0, {}};
  const auto rec = solve(s);
  const auto traj = picard_iterate(op, F, u0, T, dt, 5);
  EXPECT_LE(rel_diff(rec.snapshots.back().field, traj.back()), 1e-6);
}

TEST(Blowup, LinearStableRunNeverFlags) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  Scenario s{op, Nonlinearity::zero(), random_field(kGrid, 2, 3), Scheme::ETD2RK, 0.01, 1.0, {}, 1, 0, {}};
  s.diagnostics.push_back({"linf", [](const Field& u, double) { return flat_norm(u, kInf); }});
  const auto rec = solve(s);
  EXPECT_EQ(rec.status, Termination::completed);
  EXPECT_FALSE(detect_blowup(rec, "linf", 10.0).flagged);
}

TEST(Blowup, QuadraticOdeHittingTime) {
  // u' = u^2 from 1 reaches 1e6 at t = 1 - 1e-6.
  const auto op = scalar_operator(0.0);
  Scenario s{op, polynomial({0.0, 0.0, 1.0}), constant_mode(kGrid, 1, 0), Scheme::ETD2RK, 1e-5, 2.0, {}, 1000, 0, {}};
  s.blowup = BlowupMonitor{"linf", [](const Field& u) { return flat_norm(u, kInf); }, 1e6};
  const auto rec = solve(s);
  ASSERT_EQ(rec.status, Termination::blowup);
  EXPECT_NEAR(rec.hitting_time, 1.0 - 1e-6, 1e-3);
  const auto rep = detect_blowup(rec, "blowup_linf", 1e6);
  EXPECT_TRUE(rep.flagged);
}

TEST(Blowup, CubicHittingTimeDecreasesWithAmplitude) {
  const Grid1D g(8.0, 128);
  const auto op = assemble(g, make_bounded_identity(1, 1.0, 0.0));
  double prev = 1e300;
  for (double amp : {2.0, 4.0, 8.0}) {
    const Field u0 = Field::from_function(g, 1, [amp](double x, std::size_t) { return amp * std::exp(-x * x); });
    Scenario s{op, polynomial({0.0, 0.0, 0.0, 1.0}), u0, Scheme::ETD2RK, 1e-4, 0.5, {}, 100, 0, {}};
    s.blowup = BlowupMonitor{"linf", [](const Field& u) { return flat_norm(u, kInf); }, 1e6};
    const auto rec = solve(s);
    ASSERT_EQ(rec.status, Termination::blowup) << "amplitude " << amp;
    EXPECT_LT(rec.hitting_time, prev);
    prev = rec.hitting_time;
  }
}

TEST(Picard, ZeroNonlinearityGivesZeroFactor) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  PicardOptions o;
  o.horizon = 0.5;
  o.dt = 0.05;
  const auto r = picard_probe(op, Nonlinearity::zero(), random_field(kGrid, 2, 1), {1.0, 10.0}, o);
  for (double f : r.factors) EXPECT_EQ(f, 0.0);
}

TEST(Picard, NonpositiveLambdaRejected) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  EXPECT_THROW(picard_probe(op, lipschitz_sine(1.0), random_field(kGrid, 2, 1), {0.0}), Error);
}

TEST(Picard, FactorNonincreasingAndReachesHalf) {
  const auto op = assemble(kGrid, make_dirichlet_laplacian(2, 1.0));
  PicardOptions o;
  o.horizon = 1.0;
  o.dt = 0.02;
  const auto r = picard_probe(op, lipschitz_sine(5.0), random_field(kGrid, 2, 1), log_grid(1.0, 1e4, 10), o);
  EXPECT_TRUE(r.nonincreasing);
  EXPECT_TRUE(r.reached_half);
  EXPECT_LT(r.lambda_half, 1e4);
}

TEST(Exponents, PaperExamples) {
  const auto w = admissible_beta(Rational(0), Rational(2), 3);
  EXPECT_TRUE(w.nonempty);
  EXPECT_EQ(w.lower, Rational(1, 2));
  EXPECT_EQ(w.upper, Rational(1));
  EXPECT_TRUE(w.cauchy_ok);
  for (int d = 1; d <= 3; ++d) {
    const auto l = admissible_beta(Rational(1, 3), Rational(0), d);
    EXPECT_EQ(l.lower, Rational(1, 3));
    EXPECT_TRUE(l.cauchy_ok);
    EXPECT_TRUE(l.gradient_ok);
  }
  for (int gamma = 0; gamma <= 8; ++gamma)
    EXPECT_EQ(admissible_beta(Rational(0), Rational(gamma), 3).gradient_ok, gamma < 4) << "gamma " << gamma;
  EXPECT_FALSE(admissible_beta(Rational(0), Rational(4), 3).gradient_ok);
  EXPECT_TRUE(admissible_beta(Rational(0), Rational(39, 10), 3).gradient_ok);
}

TEST(Exponents, SubWindowAndRejections) {
  const auto w = admissible_beta(Rational(0), Rational(2), 1);
  EXPECT_EQ(w.sub_lower, Rational(1, 2));
  EXPECT_EQ(w.sub_upper, Rational(2, 3));
  EXPECT_THROW(admissible_beta(Rational(1), Rational(0), 1), Error);
  EXPECT_THROW(admissible_beta(Rational(0), Rational(-1), 1), Error);
  EXPECT_THROW(admissible_beta(Rational(0), Rational(1), 4), Error);
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational::approximate(0.75), Rational(3, 4));
  EXPECT_EQ(Rational(-3, 9).str(), "-1/3");
}
