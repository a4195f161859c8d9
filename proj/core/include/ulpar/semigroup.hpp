#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "ulpar/norms.hpp"
#include "ulpar/operator.hpp"

namespace ulpar {

struct ResolventOptions {
  double tol = 1e-10;
  int max_iter = 500;
  int restart = 80;
};

struct ResolventStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

// v = (z + A)^{-1} u, so that (z id - A)^{-1} = -(-z + A)^{-1}. With adjoint
// set, solves (z + A*) v = u instead.
ComplexField resolvent_apply(const EvolutionOperator& op, cplx z, const ComplexField& u, bool adjoint = false,
                             const ResolventOptions& opts = {}, ResolventStats* stats = nullptr);
ComplexField resolvent_apply(const EvolutionOperator& op, cplx z, const Field& u, const ResolventOptions& opts = {});
Field resolvent_apply(const EvolutionOperator& op, double z, const Field& u, const ResolventOptions& opts = {});

// exp(-A t) u for P = 0.
Field semigroup_exact(const EvolutionOperator& op, double t, const Field& u);
// exp(-A t) u - u, accurate for small t.
Field semigroup_increment(const EvolutionOperator& op, double t, const Field& u);

struct SectorParams {
  double omega = 0.0;
  double phi = std::numbers::pi / 4;
  double M = 0.0;  // 0 selects the default bound
};

double default_sector_bound(double phi);

struct ContourSpec {
  int nodes = 64;
  double alpha = 1.1721;
  double h_coef = 1.0818;
  double mu_coef = 4.4921;
  int cap = 16;
  double shift = 0.0;
  std::optional<SectorParams> sector;
  ResolventOptions resolvent;
};

// Trapezoid quadrature of the inverse Laplace integral on the hyperbola
// z(s) = shift + mu (1 + sin(i s - alpha)).
Field semigroup_contour(const EvolutionOperator& op, double t, const Field& u, const ContourSpec& spec = {});

// Exact multipliers when P = 0, otherwise the contour.
Field semigroup(const EvolutionOperator& op, double t, const Field& u);
Field semigroup_minus_identity(const EvolutionOperator& op, double t, const Field& u);

struct SectorSample {
  cplx z;
  double resolvent_norm = 0.0;
  double scaled = 0.0;
};

struct SectorReport {
  double M_observed = 0.0;
  double M_declared = 0.0;
  cplx worst_z;
  bool pass = false;
  std::string failure;
  std::vector<SectorSample> samples;
};

SectorReport verify_sectorial(const EvolutionOperator& op, const SectorParams& sector, int n_samples,
                              std::uint64_t seed = 1, double r_min = 1e-2, double r_max = 1e4);

// Operator norm of (z id - A)^{-1} in the flat discrete L2 norm by power iteration.
double resolvent_norm(const EvolutionOperator& op, cplx z, std::uint64_t seed, int iterations = 30, int restarts = 3);

std::vector<double> log_grid(double a, double b, int n);

enum class BaseNorm { flat_l2, ul };

struct IntermediateReport {
  double value = 0.0;
  double base = 0.0;
  double sup_term = 0.0;
  double argmax_t = 0.0;
  bool maximizer_at_edge = false;
  double small_t_slope = 0.0;
  std::vector<double> t;
  std::vector<double> increments;  // |exp(-At)u - u|
};

std::vector<double> default_t_grid();

IntermediateReport intermediate_norm(const EvolutionOperator& op, double theta, const Field& u,
                                     const std::vector<double>& t_grid, BaseNorm base = BaseNorm::flat_l2);

// sup over centers of |(A0 + lambda)^theta u|_{L2_rho}.
struct XThetaReport {
  double value = 0.0;
  double argmax_center = 0.0;
};
XThetaReport x_theta_norm(const EvolutionOperator& op, double theta, const Field& u, double mu,
                          const std::vector<double>& centers, double lambda = 1.0);

struct UlOperatorReport {
  std::vector<double> centers;
  std::vector<double> constants;
  double max_constant = 0.0;
  double min_constant = 0.0;
  double ratio = 0.0;
  XThetaReport x_theta;
};

// Per-center constants |z - omega| |(z - A)^{-1} u|_{rho} / |u|_{rho} at a real z
// left of the spectrum, and the X_theta norm.
UlOperatorReport ul_operator_check(const EvolutionOperator& op, const Field& u, double mu,
                                   const std::vector<double>& centers, double theta = 0.5, double lambda = 1.0,
                                   double z = -1.0);

// |A int_0^t exp(-A s) u ds - (u - exp(-A t) u)| / |u - exp(-A t) u| with graded Gauss panels.
double integrated_identity_defect(const EvolutionOperator& op, double t, const Field& u);

}  // namespace ulpar
