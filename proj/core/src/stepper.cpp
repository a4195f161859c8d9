#include "ulpar/stepper.hpp"

#include <cmath>

#include "ulpar/error.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar {

const char* to_string(Scheme s) { return s == Scheme::ETD1 ? "ETD1" : "ETD2RK"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "ETD1") return Scheme::ETD1;
  if (s == "ETD2RK") return Scheme::ETD2RK;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + s + "' (expected ETD1 or ETD2RK)");
}

double phi1(double z) {
  if (z == 0.0) return 1.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.5) {
    // sum_k z^k / (k + 2)!
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 30; ++k) {
      term *= z / (k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

Stepper::Stepper(const EvolutionOperator& op, const Nonlinearity& F, double dt, Scheme scheme)
    : op_(op), F_(F), dt_(dt), scheme_(scheme) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  const auto& S = op.symbols();
  E_.resize(S.size());
  Q1_.resize(S.size());
  Q2_.resize(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    const double z = -S[i] * dt;
    E_[i] = std::exp(z);
    Q1_[i] = dt * phi1(z);
    Q2_[i] = dt * phi2(z);
  }
  if (op.max_a_deviation() > 0.0) {
    const double limit = 0.5 * op.grid().dx() * op.grid().dx() / op.max_a_deviation();
    if (dt > limit)
      warning_ = "dt = " + std::to_string(dt) + " exceeds the explicit stability estimate " + std::to_string(limit) +
                 " for the variable diffusion coefficient";
  }
}

Field Stepper::explicit_part(const Field& u) const {
  Field n = F_.apply(u, op_.transverse());
  if (op_.perturbed()) n = n - op_.apply_P(u);
  return n;
}

Field Stepper::rhs(const Field& u) const { return explicit_part(u) - op_.apply_A0(u); }

Field Stepper::step(const Field& u) const {
  const bool linear = F_.is_zero() && !op_.perturbed();
  Spectrum uh = forward(u);
  if (linear) {
    for (std::size_t i = 0; i < uh.data.size(); ++i) uh.data[i] *= E_[i];
    return inverse(uh);
  }
  const Spectrum nh = forward(explicit_part(u));
  Spectrum a = uh;
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] = E_[i] * uh.data[i] + Q1_[i] * nh.data[i];
  if (scheme_ == Scheme::ETD1) return inverse(a);
  const Field af = inverse(a);
  const Spectrum nah = forward(explicit_part(af));
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += Q2_[i] * (nah.data[i] - nh.data[i]);
  return inverse(a);
}

Field step(const Field& state, double dt, Scheme scheme, const EvolutionOperator& op, const Nonlinearity& F) {
  return Stepper(op, F, dt, scheme).step(state);
}

}  // namespace ulpar
