#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ulpar/energy.hpp"
#include "ulpar/exponents.hpp"
#include "ulpar/snapshot.hpp"
#include "ulpar/solver.hpp"

namespace ulpar {

struct LongtimeOptions {
  double epsilon = 0.1;
  double R1 = 0.0;  // 0 disables the absolute bound
  double tolerance = 0.02;
  double mu = 0.1;
  double center_spacing = 1.0;
  std::size_t record_stride = 10;
  double blowup_threshold = 1e8;
};

struct LongtimeReport {
  double T = 0.0;
  double sup_T = 0.0;
  double sup_2T = 0.0;
  double relative_change = 0.0;
  bool pass = false;
  bool blowup = false;
  double hitting_time = -1.0;
  double m_E = 0.0;          // min of sup E / (N - 1) where N > 1
  double energy_floor = 0.0;
  double m_E_shifted = 0.0;  // same with sup E - energy_floor, positive whenever the floor holds
  bool chain_ok = false;
  bool chain_vacuous = false;  // the H1 ul norm never exceeded 1
  std::string message;
  BetaWindow window;
  std::vector<double> times;
  std::vector<double> h2_norm;
  std::vector<double> h1_norm;
  std::vector<double> sup_energy;
};

// Runs the scenario to T = s.horizon and to 2T and compares the suprema of the
// H2 and D(B) ul norm over [epsilon, T] and [epsilon, 2T].
LongtimeReport longtime_experiment(const Scenario& s, const Potential& V, const LongtimeOptions& opts = {});

struct WindowReport {
  std::vector<double> times;
  std::vector<double> distances;  // consecutive late pairs
  double modulus = 0.0;
  bool converged = false;
  bool decreasing = false;
  std::vector<double> profile;  // window values of the last snapshot when converged
};

WindowReport window_convergence(const std::vector<Snapshot>& snaps, double x_a, double x_b, double beta,
                                const TransverseOperator& B, std::size_t late_pairs = 5, double tolerance = 1e-6);

}  // namespace ulpar
