#include "ulpar/longtime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ulpar/error.hpp"
#include "ulpar/norms.hpp"

namespace ulpar {

namespace {

struct Run {
  TrajectoryRecord rec;
  std::vector<double> h2, h1, supE;
};

Run run_to(const Scenario& base, double horizon, const Potential& V, const LongtimeOptions& opts,
           const std::vector<double>& centers) {
  Scenario s = base;
  s.horizon = horizon;
  s.record_stride = opts.record_stride;
  s.snapshot_stride = 0;
  const TransverseOperator& B = base.op.transverse();
  const double mu = opts.mu;
  s.diagnostics = {
      {"h2_db_ul", [&B](const Field& u, double) { return h2_db_ul_norm(u, B); }},
      {"h1_db_half_ul", [&B](const Field& u, double) { return h1_db_half_ul_norm(u, B); }},
      {"sup_energy",
       [&B, &V, mu, &centers](const Field& u, double) { return sliding_energy(u, &V, B, mu, centers).value; }},
  };
  s.blowup = BlowupMonitor{"h2_db_ul", [&B](const Field& u) { return h2_db_ul_norm(u, B); }, opts.blowup_threshold};
  Run r;
  r.rec = solve(s);
  r.h2 = r.rec.column("h2_db_ul");
  r.h1 = r.rec.column("h1_db_half_ul");
  r.supE = r.rec.column("sup_energy");
  return r;
}

double sup_after(const std::vector<double>& t, const std::vector<double>& v, double eps) {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= eps - 1e-12) m = std::max(m, v[i]);
  return m;
}

}  // namespace

LongtimeReport longtime_experiment(const Scenario& s, const Potential& V, const LongtimeOptions& opts) {
  const auto& meta = s.F.meta();
  LongtimeReport rep;
  rep.window = admissible_beta(Rational::approximate(meta.alpha, 1000), Rational::approximate(meta.gamma, 1000), 1);
  if (!rep.window.gradient_ok)
    throw Error(ErrorCode::Hypothesis, "growth exponents violate the gradient flow condition on (alpha, gamma)");
  if (!(s.horizon > opts.epsilon)) throw Error(ErrorCode::InvalidArgument, "horizon must exceed epsilon");
  rep.T = s.horizon;
  const auto centers = lattice_centers(s.op.grid(), opts.center_spacing);

  const Run a = run_to(s, s.horizon, V, opts, centers);
  const Run b = run_to(s, 2.0 * s.horizon, V, opts, centers);
  for (const Run* r : {&a, &b}) {
    if (r->rec.status != Termination::completed) {
      rep.blowup = true;
      rep.hitting_time = r->rec.hitting_time;
      rep.message = r->rec.message;
    }
  }
  rep.times = b.rec.times;
  rep.h2_norm = b.h2;
  rep.h1_norm = b.h1;
  rep.sup_energy = b.supE;
  if (rep.blowup) return rep;

  rep.sup_T = sup_after(a.rec.times, a.h2, opts.epsilon);
  rep.sup_2T = sup_after(b.rec.times, b.h2, opts.epsilon);
  rep.relative_change = rep.sup_T > 0.0 ? std::abs(rep.sup_2T - rep.sup_T) / rep.sup_T : 0.0;

  rep.energy_floor = energy_floor(s.op.grid(), V, s.op.transverse(), EnergySpec::truncated(opts.mu, 0.0));
  rep.m_E = rep.m_E_shifted = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    if (rep.times[i] < opts.epsilon - 1e-12 || rep.h1_norm[i] <= 1.0) continue;
    rep.m_E = std::min(rep.m_E, rep.sup_energy[i] / (rep.h1_norm[i] - 1.0));
    rep.m_E_shifted = std::min(rep.m_E_shifted, (rep.sup_energy[i] - rep.energy_floor) / (rep.h1_norm[i] - 1.0));
  }
  rep.chain_vacuous = !std::isfinite(rep.m_E);
  if (rep.chain_vacuous) rep.m_E = rep.m_E_shifted = 0.0;
  rep.chain_ok = rep.chain_vacuous || rep.m_E_shifted > 0.0;

  rep.pass = rep.relative_change <= opts.tolerance && (opts.R1 <= 0.0 || rep.sup_2T <= opts.R1);
  return rep;
}

WindowReport window_convergence(const std::vector<Snapshot>& snaps, double x_a, double x_b, double beta,
                                const TransverseOperator& B, std::size_t late_pairs, double tolerance) {
  if (snaps.size() < 3) throw Error(ErrorCode::InvalidArgument, "window convergence needs at least 3 snapshots");
  if (!(x_b > x_a)) throw Error(ErrorCode::InvalidArgument, "window must satisfy x_a < x_b");
  const Field& ref = snaps.front().field;
  for (const auto& s : snaps) require_same_shape(ref, s.field, "window_convergence");
  if (B.modes() != ref.modes()) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");

  const Grid1D& g = ref.grid();
  std::vector<std::size_t> nodes;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.x(k) >= x_a - 1e-12 && g.x(k) <= x_b + 1e-12) nodes.push_back(k);
  if (nodes.size() < 2) throw Error(ErrorCode::DomainTooSmall, "window contains fewer than two grid nodes");
  std::vector<double> lam(ref.modes());
  for (std::size_t j = 0; j < lam.size(); ++j) lam[j] = B.floored_power(j, beta);

  auto distance = [&](const Field& u, const Field& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto a = u.row(nodes[i]), b = v.row(nodes[i]);
      double r = 0.0;
      for (std::size_t j = 0; j < lam.size(); ++j) {
        const double d = lam[j] * (a[j] - b[j]);
        r += d * d;
      }
      s += (i == 0 || i + 1 == nodes.size() ? 0.5 : 1.0) * r;
    }
    return std::sqrt(s * g.dx());
  };

  WindowReport rep;
  const std::size_t count = std::min(snaps.size(), late_pairs + 1);
  const std::size_t first = snaps.size() - count;
  for (std::size_t i = first; i < snaps.size(); ++i) rep.times.push_back(snaps[i].time);
  for (std::size_t i = first; i + 1 < snaps.size(); ++i)
    rep.distances.push_back(distance(snaps[i].field, snaps[i + 1].field));
  for (std::size_t i = first; i < snaps.size(); ++i)
    for (std::size_t m = i + 1; m < snaps.size(); ++m)
      rep.modulus = std::max(rep.modulus, distance(snaps[i].field, snaps[m].field));
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.distances.size(); ++i)
    if (!(rep.distances[i] < rep.distances[i - 1])) rep.decreasing = false;
  rep.converged = rep.modulus < tolerance;
  if (rep.converged) {
    const Field& last = snaps.back().field;
    for (std::size_t k : nodes)
      for (double c : last.row(k)) rep.profile.push_back(c);
  }
  return rep;
}

}  // namespace ulpar
