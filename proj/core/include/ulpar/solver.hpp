#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ulpar/nonlinearity.hpp"
#include "ulpar/operator.hpp"
#include "ulpar/snapshot.hpp"
#include "ulpar/stepper.hpp"

namespace ulpar {

struct Diagnostic {
  std::string name;
  std::function<double(const Field& u, double t)> eval;
};

struct BlowupMonitor {
  std::string channel = "norm";
  std::function<double(const Field& u)> norm;
  double threshold = 1e6;
};

struct Scenario {
  EvolutionOperator op;
  Nonlinearity F;
  Field u0;
  Scheme scheme = Scheme::ETD2RK;
  double dt = 1e-3;
  double horizon = 1.0;
  std::vector<Diagnostic> diagnostics;
  std::size_t record_stride = 1;
  std::size_t snapshot_stride = 0;  // 0 keeps only the initial and final states
  std::optional<BlowupMonitor> blowup;
};

enum class Termination { completed, blowup, error };
const char* to_string(Termination t);

struct TrajectoryRecord {
  std::vector<std::string> columns;         // diagnostic names; the first is always dist_u0_ul
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[i][c]
  std::vector<Snapshot> snapshots;
  Termination status = Termination::completed;
  double hitting_time = -1.0;
  std::string message;
  std::vector<std::string> warnings;
  std::size_t steps = 0;

  std::vector<double> column(const std::string& name) const;
};

TrajectoryRecord solve(const Scenario& s);

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec);

struct BlowupReport {
  bool flagged = false;
  double hitting_time = -1.0;
  double peak = 0.0;
};

// Scans a recorded column for the first time in [t_from, t_to] where it exceeds
// the threshold or stops being finite.
BlowupReport detect_blowup(const TrajectoryRecord& rec, const std::string& column, double threshold,
                           double t_from = 0.0, double t_to = 1e300);

// Slope of log |u(t) - u0|_ul against log t over the first `steps` recorded steps.
double continuity_exponent(const TrajectoryRecord& rec, std::size_t steps = 10);

}  // namespace ulpar
