#pragma once

#include <string>
#include <vector>

#include "ulpar/nonlinearity.hpp"
#include "ulpar/operator.hpp"

namespace ulpar {

enum class Scheme { ETD1, ETD2RK };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

// phi_1(z) = (e^z - 1)/z and phi_2(z) = (e^z - 1 - z)/z^2, stable near 0.
double phi1(double z);
double phi2(double z);

// Exponential time differencing with A0 exact and F(u) - P u explicit.
class Stepper {
 public:
  Stepper(const EvolutionOperator& op, const Nonlinearity& F, double dt, Scheme scheme);

  Field step(const Field& u) const;
  // Explicit part N(u) = F(u) - P u.
  Field explicit_part(const Field& u) const;
  // u_t = -A u + F(u).
  Field rhs(const Field& u) const;

  double dt() const noexcept { return dt_; }
  Scheme scheme() const noexcept { return scheme_; }
  // Nonempty when dt exceeds the explicit stability estimate for the variable coefficient.
  const std::string& warning() const noexcept { return warning_; }

 private:
  const EvolutionOperator& op_;
  const Nonlinearity& F_;
  double dt_;
  Scheme scheme_;
  std::vector<double> E_, Q1_, Q2_;  // exp(-S dt), dt phi1(-S dt), dt phi2(-S dt)
  std::string warning_;
};

Field step(const Field& state, double dt, Scheme scheme, const EvolutionOperator& op, const Nonlinearity& F);

}  // namespace ulpar
