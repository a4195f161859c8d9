#pragma once

#include <cstddef>

#include "ulpar/energy.hpp"
#include "ulpar/potential.hpp"
#include "ulpar/solver.hpp"

namespace ulpar::presets {

// Bistable reaction inside a transverse corridor |y - center| < half_width and
// cubic damping outside, as a gradient flow u_t = u_xx - B u - grad V(u) with
// B the Dirichlet Laplacian shifted by +1.
struct CorridorParams {
  double L = 32.0;
  std::size_t n_x = 512;
  std::size_t modes = 12;
  double section = 6.0;
  double corridor_center = 3.0;
  double corridor_half_width = 1.0;
  double corridor_blend = 0.5;
  double k = 40.0;
  double a = 0.25;
  double amplitude = 0.9;
  double plateau = 4.0;
  double dt = 5e-3;
  Scheme scheme = Scheme::ETD2RK;
};

double corridor_indicator(const CorridorParams& p, double y);
Potential corridor_potential(const CorridorParams& p);
Field corridor_initial(const CorridorParams& p, const Grid1D& g, const TransverseOperator& B);
Scenario corridor_scenario(const CorridorParams& p, double horizon);

// Linear gradient flow with V = kappa |u|^2 / 2 on a Dirichlet section.
struct LinearFlowParams {
  double L = 16.0;
  std::size_t n_x = 256;
  std::size_t modes = 4;
  double section = 2.0;
  double kappa = 1.0;
  double dt = 1e-2;
  std::uint64_t seed = 7;
};

Scenario linear_flow_scenario(const LinearFlowParams& p, double horizon);

// Advective transverse operator -u'' - W' u' with W(y) = strength cos(2 pi y / l).
struct AdvectiveParams {
  double L = 16.0;
  std::size_t n_x = 256;
  std::size_t modes = 8;
  double section = 1.0;
  double strength = 2.0;
  std::size_t fd_points = 1024;
  double dt = 1e-3;
};

TransverseOperator advective_operator(const AdvectiveParams& p);
Scenario advective_scenario(const AdvectiveParams& p, double horizon);

}  // namespace ulpar::presets
