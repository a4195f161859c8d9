#include "ulpar/solver.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ulpar/error.hpp"
#include "ulpar/norms.hpp"

namespace ulpar {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blowup: return "blowup";
    case Termination::error: return "error";
  }
  return "unknown";
}

std::vector<double> TrajectoryRecord::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row[c]);
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "no diagnostic column named '" + name + "'");
}

TrajectoryRecord solve(const Scenario& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(s.horizon > 0.0) || !std::isfinite(s.horizon)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
  if (s.u0.grid() != s.op.grid() || s.u0.modes() != s.op.modes())
    throw Error(ErrorCode::GridMismatch, "initial data does not match the operator grid");
  const double ratio = s.horizon / s.dt;
  const auto nsteps = static_cast<std::size_t>(std::llround(ratio));
  if (nsteps == 0 || std::abs(ratio - static_cast<double>(nsteps)) > 1e-9 * ratio)
    throw Error(ErrorCode::InvalidArgument, "horizon must be a positive multiple of dt");
  const std::size_t stride = std::max<std::size_t>(1, s.record_stride);

  Stepper stepper(s.op, s.F, s.dt, s.scheme);
  TrajectoryRecord rec;
  if (!stepper.warning().empty()) rec.warnings.push_back(stepper.warning());
  rec.columns.push_back("dist_u0_ul");
  for (const auto& d : s.diagnostics) rec.columns.push_back(d.name);
  if (s.blowup) rec.columns.push_back("blowup_" + s.blowup->channel);

  auto record = [&](const Field& u, double t) {
    std::vector<double> row;
    row.reserve(rec.columns.size());
    row.push_back(t == 0.0 ? 0.0 : ul_norm(u - s.u0, 2.0));
    for (const auto& d : s.diagnostics) row.push_back(d.eval(u, t));
    double monitored = 0.0;
    if (s.blowup) {
      monitored = s.blowup->norm(u);
      row.push_back(monitored);
    }
    rec.times.push_back(t);
    rec.values.push_back(std::move(row));
    return monitored;
  };

  Field u = s.u0;
  record(u, 0.0);
  rec.snapshots.push_back({u, 0.0});
  for (std::size_t n = 1; n <= nsteps; ++n) {
    const double t = static_cast<double>(n) * s.dt;
    try {
      u = stepper.step(u);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFinite) throw;
      rec.steps = n;
      rec.status = s.blowup ? Termination::blowup : Termination::error;
      rec.hitting_time = t;
      rec.message = "state became non-finite at t = " + std::to_string(t);
      return rec;
    }
    rec.steps = n;
    const bool last = n == nsteps;
    double monitored = 0.0;
    if (n % stride == 0 || last || s.blowup) {
      if (n % stride == 0 || last) {
        monitored = record(u, t);
      } else {
        monitored = s.blowup->norm(u);
      }
    }
    if (s.snapshot_stride > 0 && n % s.snapshot_stride == 0 && !last) rec.snapshots.push_back({u, t});
    if (s.blowup && (!std::isfinite(monitored) || monitored >= s.blowup->threshold)) {
      if (rec.times.back() != t) record(u, t);
      rec.status = Termination::blowup;
      rec.hitting_time = t;
      rec.snapshots.push_back({u, t});
      rec.message = s.blowup->channel + " exceeded " + std::to_string(s.blowup->threshold);
      return rec;
    }
  }
  rec.snapshots.push_back({u, static_cast<double>(nsteps) * s.dt});
  return rec;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec) {
  char buf[40];
  os << "t";
  for (const auto& c : rec.columns) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", rec.times[i]);
    os << buf;
    for (double v : rec.values[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
}

BlowupReport detect_blowup(const TrajectoryRecord& rec, const std::string& column, double threshold, double t_from,
                           double t_to) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "blow-up threshold must be positive");
  const std::vector<double> v = rec.column(column);
  BlowupReport rep;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = rec.times[i];
    if (t < t_from || t > t_to) continue;
    if (std::isfinite(v[i])) rep.peak = std::max(rep.peak, v[i]);
    if (!std::isfinite(v[i]) || v[i] >= threshold) {
      rep.flagged = true;
      rep.hitting_time = t;
      return rep;
    }
  }
  if (rec.status == Termination::blowup && rec.hitting_time >= t_from && rec.hitting_time <= t_to) {
    rep.flagged = true;
    rep.hitting_time = rec.hitting_time;
  }
  return rep;
}

double continuity_exponent(const TrajectoryRecord& rec, std::size_t steps) {
  const std::vector<double> d = rec.column("dist_u0_ul");
  std::vector<double> lx, ly;
  for (std::size_t i = 1; i < d.size() && lx.size() < steps; ++i) {
    if (d[i] <= 0.0) continue;
    lx.push_back(std::log(rec.times[i]));
    ly.push_back(std::log(d[i]));
  }
  if (lx.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace ulpar
