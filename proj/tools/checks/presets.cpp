#include "presets.hpp"

#include <cmath>
#include <numbers>

#include "ulpar/norms.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar::presets {

namespace {

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

// Mode coefficients of h(y) by the transverse quadrature.
std::vector<double> project(const TransverseOperator& B, const std::function<double(double)>& h) {
  const auto& q = B.quadrature();
  const std::size_t M = B.modes();
  std::vector<double> c(M, 0.0);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double v = q.weights[i] * h(q.nodes[i]);
    for (std::size_t j = 0; j < M; ++j) c[j] += v * q.basis[i * M + j];
  }
  return c;
}

}  // namespace

double corridor_indicator(const CorridorParams& p, double y) {
  const double d = std::abs(y - p.corridor_center);
  return smooth_step((p.corridor_half_width + p.corridor_blend - d) / p.corridor_blend);
}

Potential corridor_potential(const CorridorParams& p) {
  const double k = p.k, a = p.a;
  auto chi = [p](double y) { return corridor_indicator(p, y); };
  NonlinearityMeta meta;
  meta.gamma = 2.0;
  meta.constant = 3.0 * k;
  meta.degree = 3;
  // <grad V, u> = chi k (u^4 - (1+a) u^3 + a u^2) + (1 - chi) u^4 >= u^2 - 8 |u| for k = 40, a = 1/4
  return Potential(
      [=](double y, double u) {
        const double c = chi(y), u2 = u * u;
        return -c * k * (-0.25 * u2 * u2 + (1.0 + a) * u2 * u / 3.0 - 0.5 * a * u2) + (1.0 - c) * 0.25 * u2 * u2;
      },
      [=](double y, double u) {
        const double c = chi(y);
        return -c * k * u * (1.0 - u) * (u - a) + (1.0 - c) * u * u * u;
      },
      {1.0, 8.0}, meta, "corridor");
}

Field corridor_initial(const CorridorParams& p, const Grid1D& g, const TransverseOperator& B) {
  const auto c = project(B, [&](double y) { return corridor_indicator(p, y); });
  const double half = p.plateau, ramp = 1.0;
  return Field::from_function(g, B.modes(), [&](double x, std::size_t j) {
    return p.amplitude * smooth_step((half + ramp - std::abs(x)) / ramp) * c[j];
  });
}

Scenario corridor_scenario(const CorridorParams& p, double horizon) {
  const Grid1D g(p.L, p.n_x);
  const TransverseOperator B = make_dirichlet_laplacian(p.modes, p.section).shifted(1.0);
  const Potential V = corridor_potential(p);
  return Scenario{assemble(g, B), V.as_force(), corridor_initial(p, g, B), p.scheme, p.dt, horizon, {}, 1, 0, {}};
}

Scenario linear_flow_scenario(const LinearFlowParams& p, double horizon) {
  const Grid1D g(p.L, p.n_x);
  const TransverseOperator B = make_dirichlet_laplacian(p.modes, p.section);
  const Potential V = Potential::quadratic(p.kappa);
  const Field u0 = random_smooth_field(g, p.modes, p.seed, 8, 1.0);
  return Scenario{assemble(g, B), V.as_force(), u0, Scheme::ETD2RK, p.dt, horizon, {}, 1, 0, {}};
}

TransverseOperator advective_operator(const AdvectiveParams& p) {
  std::vector<double> W(p.fd_points + 2);
  for (std::size_t i = 0; i < W.size(); ++i) {
    const double y = p.section * static_cast<double>(i) / static_cast<double>(W.size() - 1);
    W[i] = p.strength * std::cos(2.0 * std::numbers::pi * y / p.section);
  }
  return make_advective(p.modes, p.section, W, p.fd_points);
}

Scenario advective_scenario(const AdvectiveParams& p, double horizon) {
  const Grid1D g(p.L, p.n_x);
  const TransverseOperator B = advective_operator(p);
  const Field u0 = Field::from_function(g, p.modes, [](double x, std::size_t j) {
    return j == 0 ? std::exp(-x * x) : 0.0;
  });
  return Scenario{assemble(g, B), Nonlinearity::zero(), u0, Scheme::ETD2RK, p.dt, horizon, {}, 1, 0, {}};
}

}  // namespace ulpar::presets
