#include "ulpar/potential.hpp"

#include <cmath>

#include "ulpar/error.hpp"
#include "ulpar/quadrature.hpp"

namespace ulpar {

Potential::Potential(Rule V, Rule dV, Coercivity coercivity, NonlinearityMeta growth, std::string name)
    : V_(std::move(V)), dV_(std::move(dV)), coercivity_(coercivity), growth_(growth), name_(std::move(name)) {
  if (!V_ || !dV_) throw Error(ErrorCode::InvalidArgument, "potential needs both V and its gradient");
  if (coercivity_.delta < 0.0) throw Error(ErrorCode::InvalidArgument, "coercivity delta must be nonnegative");
}

Potential Potential::quadratic(double kappa) {
  NonlinearityMeta meta;
  meta.constant = std::abs(kappa);
  return Potential([kappa](double, double u) { return 0.5 * kappa * u * u; },
                   [kappa](double, double u) { return kappa * u; }, {kappa, 0.0}, meta, "quadratic");
}

Potential Potential::double_well() {
  NonlinearityMeta meta;
  meta.gamma = 2.0;
  meta.constant = 3.0;
  meta.degree = 3;
  return Potential([](double, double u) { return 0.25 * u * u * u * u - 0.5 * u * u; },
                   [](double, double u) { return u * u * u - u; }, {1.0, 2.0}, meta, "double_well");
}

std::vector<double> Potential::density(const Field& u, const TransverseOperator& B) const {
  if (B.modes() != u.modes()) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");
  const auto& q = B.quadrature();
  const std::size_t M = u.modes(), Q = q.nodes.size();
  std::vector<double> out(u.nx(), 0.0);
  for (std::size_t k = 0; k < u.nx(); ++k) {
    const auto c = u.row(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < Q; ++i) {
      const double* e = &q.basis[i * M];
      double s = 0.0;
      for (std::size_t j = 0; j < M; ++j) s += c[j] * e[j];
      acc += q.weights[i] * V_(q.nodes[i], s);
    }
    out[k] = acc;
  }
  return out;
}

Field Potential::gradient_field(const Field& u, const TransverseOperator& B) const {
  if (B.modes() != u.modes()) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");
  const auto& q = B.quadrature();
  const std::size_t M = u.modes(), Q = q.nodes.size();
  std::vector<double> out(u.nx() * M, 0.0);
  std::vector<double> vals(Q);
  for (std::size_t k = 0; k < u.nx(); ++k) {
    const auto c = u.row(k);
    for (std::size_t i = 0; i < Q; ++i) {
      const double* e = &q.basis[i * M];
      double s = 0.0;
      for (std::size_t j = 0; j < M; ++j) s += c[j] * e[j];
      vals[i] = q.weights[i] * dV_(q.nodes[i], s);
    }
    double* o = &out[k * M];
    for (std::size_t i = 0; i < Q; ++i) {
      const double* e = &q.basis[i * M];
      for (std::size_t j = 0; j < M; ++j) o[j] += vals[i] * e[j];
    }
  }
  return Field(u.grid(), M, std::move(out));
}

Nonlinearity Potential::as_force() const {
  Rule dV = dV_;
  return Nonlinearity::pointwise([dV](double y, double u) { return -dV(y, u); }, growth_, "minus_grad_" + name_);
}

double Potential::primitive_defect(double y, double u, int gauss_points) const {
  const auto gl = gauss_legendre(gauss_points);
  double integral = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double tau = 0.5 * (gl.nodes[i] + 1.0);
    integral += 0.5 * gl.weights[i] * dV_(y, tau * u) * u;
  }
  return std::abs(V_(y, u) - V_(y, 0.0) - integral);
}

}  // namespace ulpar
