#pragma once

#include <cstdint>
#include <vector>

#include "ulpar/nonlinearity.hpp"
#include "ulpar/operator.hpp"

namespace ulpar {

using Trajectory = std::vector<Field>;

// psi(x)(t_n) = exp(-A t_n) u0 + int_0^{t_n} exp(-A (t_n - s)) F(x(s)) ds with
// F(x(s)) interpolated linearly between grid times. Needs P = 0.
Trajectory picard_map(const EvolutionOperator& op, const Nonlinearity& F, const Field& u0, const Trajectory& x,
                      double dt);

// k iterations of the map starting from the constant trajectory u0.
Trajectory picard_iterate(const EvolutionOperator& op, const Nonlinearity& F, const Field& u0, double horizon,
                          double dt, int iterations);

struct PicardReport {
  std::vector<double> lambdas;
  std::vector<double> factors;
  bool nonincreasing = false;
  bool reached_half = false;
  double lambda_half = 0.0;  // first ladder value with factor <= 1/2
};

struct PicardOptions {
  double horizon = 1.0;
  double dt = 0.01;
  double theta = 0.5;
  std::uint64_t seed = 1;
  double amplitude = 0.5;
};

// Measured |psi(x) - psi(y)|_lambda / |x - y|_lambda for two random iterates,
// with |x|_lambda = sup_t exp(-lambda t) |x(t)|_{D_A(theta, inf) estimate}.
PicardReport picard_probe(const EvolutionOperator& op, const Nonlinearity& F, const Field& u0,
                          const std::vector<double>& lambdas, const PicardOptions& opts = {});

}  // namespace ulpar
