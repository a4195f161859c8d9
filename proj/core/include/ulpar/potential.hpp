#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ulpar/field.hpp"
#include "ulpar/nonlinearity.hpp"
#include "ulpar/transverse.hpp"

namespace ulpar {

// <grad V(y, u), u> >= kappa u^2 - delta |u| pointwise.
struct Coercivity {
  double kappa = 0.0;
  double delta = 0.0;
};

class Potential {
 public:
  using Rule = std::function<double(double y, double u)>;

  Potential(Rule V, Rule dV, Coercivity coercivity, NonlinearityMeta growth, std::string name);

  // V = kappa u^2 / 2
  static Potential quadratic(double kappa);
  // V = u^4/4 - u^2/2, grad V = u^3 - u
  static Potential double_well();

  double value(double y, double u) const { return V_(y, u); }
  double gradient(double y, double u) const { return dV_(y, u); }
  const Coercivity& coercivity() const noexcept { return coercivity_; }
  const NonlinearityMeta& growth() const noexcept { return growth_; }
  const std::string& name() const noexcept { return name_; }

  // Cross-section integral of V(y, u(x_k, y)) at every node.
  std::vector<double> density(const Field& u, const TransverseOperator& B) const;
  // Mode coefficients of grad V(u).
  Field gradient_field(const Field& u, const TransverseOperator& B) const;
  // F = -grad V as a pointwise nonlinearity.
  Nonlinearity as_force() const;

  // |V(y,u) - V(y,0) - int_0^1 dV(y, tau u) u dtau| by Gauss quadrature.
  double primitive_defect(double y, double u, int gauss_points = 20) const;

 private:
  Rule V_, dV_;
  Coercivity coercivity_;
  NonlinearityMeta growth_;
  std::string name_;
};

}  // namespace ulpar
