#pragma once

#include <vector>

#include "ulpar/grid.hpp"

namespace ulpar {

// rho(x) = 1 / cosh(mu sqrt(1 + d(x, center)^2)) with the periodic distance d.
struct Weight {
  double mu = 1.0;
  double center = 0.0;

  Weight() = default;
  Weight(double mu_, double center_);

  double value(const Grid1D& g, double x) const;
  double derivative(const Grid1D& g, double x) const;
  double second_derivative(const Grid1D& g, double x) const;

  std::vector<double> sample(const Grid1D& g) const;
  std::vector<double> sample_derivative(const Grid1D& g) const;
};

// rho at distance d from the center.
double weight_profile(double mu, double d);

}  // namespace ulpar
