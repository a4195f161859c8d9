#include "ulpar/weight.hpp"

#include <cmath>

#include "ulpar/error.hpp"

namespace ulpar {

Weight::Weight(double mu_, double center_) : mu(mu_), center(center_) {
  if (!(mu_ > 0.0) || !std::isfinite(mu_)) throw Error(ErrorCode::InvalidArgument, "weight decay rate must be positive");
  if (!std::isfinite(center_)) throw Error(ErrorCode::InvalidArgument, "weight center must be finite");
}

double weight_profile(double mu, double d) { return 1.0 / std::cosh(mu * std::sqrt(1.0 + d * d)); }

double Weight::value(const Grid1D& g, double x) const { return weight_profile(mu, g.periodic_offset(x, center)); }

double Weight::derivative(const Grid1D& g, double x) const {
  const double d = g.periodic_offset(x, center);
  const double s = std::sqrt(1.0 + d * d);
  const double r = 1.0 / std::cosh(mu * s);
  return -mu * std::tanh(mu * s) * r * d / s;
}

double Weight::second_derivative(const Grid1D& g, double x) const {
  const double d = g.periodic_offset(x, center);
  const double s = std::sqrt(1.0 + d * d);
  const double r = 1.0 / std::cosh(mu * s);
  const double th = std::tanh(mu * s);
  // rho = sech(mu s), s' = d/s, s'' = 1/s^3
  const double sp = d / s;
  const double spp = 1.0 / (s * s * s);
  const double drho_ds = -mu * th * r;
  const double d2rho_ds2 = mu * mu * r * (th * th - r * r);
  return d2rho_ds2 * sp * sp + drho_ds * spp;
}

std::vector<double> Weight::sample(const Grid1D& g) const {
  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = value(g, g.x(k));
  return out;
}

std::vector<double> Weight::sample_derivative(const Grid1D& g) const {
  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = derivative(g, g.x(k));
  return out;
}

}  // namespace ulpar
