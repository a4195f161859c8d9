#include "ulpar/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ulpar/error.hpp"
#include "ulpar/spectral.hpp"
#include "ulpar/weight.hpp"

namespace ulpar {

EnergySpec EnergySpec::truncated(double mu, double center) {
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "energy weight mu must be positive");
  EnergySpec s;
  s.mu = mu;
  s.center = center;
  return s;
}

EnergySpec EnergySpec::formal_flat() {
  EnergySpec s;
  s.flat = true;
  s.u2_term = false;
  return s;
}

std::vector<double> energy_weight(const Grid1D& g, const EnergySpec& spec) {
  if (spec.flat) return std::vector<double>(g.size(), 1.0);
  return Weight(spec.mu, spec.center).sample(g);
}

std::vector<double> energy_weight_derivative(const Grid1D& g, const EnergySpec& spec) {
  if (spec.flat) return std::vector<double>(g.size(), 0.0);
  return Weight(spec.mu, spec.center).sample_derivative(g);
}

namespace {

double b_quadratic(const TransverseOperator& B, std::span<const double> c) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += B.eigenvalue(j) * c[j] * c[j];
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

void check_inputs(const Field& u, const TransverseOperator& B) {
  if (B.modes() != u.modes()) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");
}

}  // namespace

std::vector<double> energy_density(const Field& u, const Potential* V, const TransverseOperator& B,
                                   const EnergySpec& spec) {
  check_inputs(u, B);
  std::vector<double> e(u.nx(), 0.0);
  if (spec.gradient_term) {
    const Field ux = derivative(u, 1);
    for (std::size_t k = 0; k < u.nx(); ++k) e[k] += 0.5 * dot(ux.row(k), ux.row(k));
  }
  for (std::size_t k = 0; k < u.nx(); ++k) {
    if (spec.u2_term) e[k] += 0.5 * dot(u.row(k), u.row(k));
    if (spec.b_half_term) e[k] += 0.5 * b_quadratic(B, u.row(k));
  }
  if (spec.potential_term && V) {
    const auto v = V->density(u, B);
    for (std::size_t k = 0; k < u.nx(); ++k) e[k] += v[k];
  }
  return e;
}

double truncated_energy(const Field& u, const Potential* V, const TransverseOperator& B, const EnergySpec& spec) {
  const auto e = energy_density(u, V, B, spec);
  const auto rho = energy_weight(u.grid(), spec);
  double s = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) s += rho[k] * e[k];
  return s * u.grid().dx();
}

SlidingEnergy sliding_energy(const Field& u, const Potential* V, const TransverseOperator& B, double mu,
                             const std::vector<double>& centers) {
  if (centers.empty()) throw Error(ErrorCode::InvalidArgument, "sliding energy needs at least one center");
  EnergySpec spec = EnergySpec::truncated(mu, 0.0);
  const auto e = energy_density(u, V, B, spec);
  const Grid1D& g = u.grid();
  SlidingEnergy best{-std::numeric_limits<double>::infinity(), centers.front()};
  for (double c : centers) {
    double s = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) s += weight_profile(mu, g.periodic_distance(g.x(k), c)) * e[k];
    s *= g.dx();
    if (s > best.value) best = {s, c};
  }
  return best;
}

LedgerTerms dissipation_ledger(const Field& u, const Field& ut, const Potential& V, const TransverseOperator& B,
                               const EnergySpec& spec) {
  check_inputs(u, B);
  require_same_shape(u, ut, "dissipation_ledger");
  const Grid1D& g = u.grid();
  const auto rho = energy_weight(g, spec);
  const auto drho = energy_weight_derivative(g, spec);
  const Field ux = derivative(u, 1);
  const Field gv = V.gradient_field(u, B);
  LedgerTerms t;
  for (std::size_t k = 0; k < u.nx(); ++k) {
    t.dissipation -= rho[k] * dot(ut.row(k), ut.row(k));
    t.weight_time -= drho[k] * dot(ux.row(k), ut.row(k));
    if (spec.u2_term) {
      t.gradient -= rho[k] * dot(ux.row(k), ux.row(k));
      t.b_half -= rho[k] * b_quadratic(B, u.row(k));
      t.weight_state -= drho[k] * dot(ux.row(k), u.row(k));
      t.potential -= rho[k] * dot(u.row(k), gv.row(k));
    }
  }
  const double dx = g.dx();
  t.dissipation *= dx;
  t.weight_time *= dx;
  t.gradient *= dx;
  t.b_half *= dx;
  t.weight_state *= dx;
  t.potential *= dx;
  if (spec.ledger_fault) t.weight_time = -t.weight_time;
  t.total = t.dissipation + t.weight_time + t.gradient + t.b_half + t.weight_state + t.potential;
  return t;
}

std::vector<LedgerRow> ledger_along(const Stepper& stepper, const Potential& V, const TransverseOperator& B,
                                    const EnergySpec& spec, const Field& u0, std::size_t steps, std::size_t stride) {
  if (steps < 2 || stride == 0) throw Error(ErrorCode::InvalidArgument, "ledger needs at least two steps");
  const double dt = stepper.dt();
  Field prev = u0;
  Field cur = stepper.step(prev);
  double e_prev = truncated_energy(prev, &V, B, spec);
  double e_cur = truncated_energy(cur, &V, B, spec);
  std::vector<LedgerRow> rows;
  for (std::size_t i = 1; i < steps; ++i) {
    Field next = stepper.step(cur);
    const double e_next = truncated_energy(next, &V, B, spec);
    if (i % stride == 0) {
      LedgerRow r;
      r.t = static_cast<double>(i) * dt;
      r.energy = e_cur;
      r.terms = dissipation_ledger(cur, stepper.rhs(cur), V, B, spec);
      r.centered = (e_next - e_prev) / (2.0 * dt);
      rows.push_back(r);
    }
    prev = std::move(cur);
    cur = std::move(next);
    e_prev = e_cur;
    e_cur = e_next;
  }
  return rows;
}

void write_ledger_csv(std::ostream& os, const std::vector<LedgerRow>& rows) {
  os << "t,energy,dissipation,weight_time,gradient,b_half,weight_state,potential,total,centered_difference\n";
  char buf[512];
  for (const auto& r : rows) {
    const auto& t = r.terms;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.energy,
                  t.dissipation, t.weight_time, t.gradient, t.b_half, t.weight_state, t.potential, t.total,
                  r.centered);
    os << buf;
  }
}

double energy_floor(const Grid1D& g, const Potential& V, const TransverseOperator& B, const EnergySpec& spec) {
  const auto& q = B.quadrature();
  double v0 = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    v0 += q.weights[i] * V.value(q.nodes[i], 0.0);
    wsum += q.weights[i];
  }
  const double delta_y = V.coercivity().delta * std::sqrt(wsum);
  const double c = V.coercivity().kappa + (spec.u2_term ? 1.0 : 0.0);
  double density = v0;
  if (delta_y > 0.0) {
    if (!(c > 0.0)) return -std::numeric_limits<double>::infinity();
    density -= delta_y * delta_y / (2.0 * c);
  } else if (c < 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  const auto rho = energy_weight(g, spec);
  double s = 0.0;
  for (double r : rho) s += r;
  return density * s * g.dx();
}

GronwallReport gronwall_audit(const std::vector<double>& t, const std::vector<double>& E, double nu) {
  if (t.empty() || t.size() != E.size()) throw Error(ErrorCode::InvalidArgument, "energy series is empty or ragged");
  if (!(nu > 0.0)) throw Error(ErrorCode::InvalidArgument, "nu must be positive");
  GronwallReport r;
  r.nu = nu;
  r.worst_gap = -std::numeric_limits<double>::infinity();
  const double floor = 1.0 / (nu * nu);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double bound = std::exp(-nu * (t[i] - t[0])) * E[0] + floor;
    const double gap = E[i] - bound;
    if (gap > r.worst_gap) {
      r.worst_gap = gap;
      r.worst_index = i;
    }
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(E[0]) + floor);
  r.pass = r.worst_gap <= tol;
  return r;
}

double gronwall_max_nu(const std::vector<double>& t, const std::vector<double>& E, double nu_lo, double nu_hi) {
  if (!(nu_lo > 0.0) || !(nu_hi > nu_lo)) throw Error(ErrorCode::InvalidArgument, "invalid nu bracket");
  if (gronwall_audit(t, E, nu_hi).pass) return nu_hi;
  if (!gronwall_audit(t, E, nu_lo).pass) return 0.0;
  double lo = nu_lo, hi = nu_hi;
  for (int it = 0; it < 40; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (gronwall_audit(t, E, mid).pass)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

CoercivityReport coercivity_check(const Potential& V, const std::vector<double>& ys,
                                  const std::vector<double>& amplitudes) {
  if (ys.empty() || amplitudes.empty()) throw Error(ErrorCode::InvalidArgument, "coercivity check needs samples");
  struct Sample {
    double u2, au, s;
  };
  std::vector<Sample> samples;
  for (double y : ys)
    for (double u : amplitudes) samples.push_back({u * u, std::abs(u), V.gradient(y, u) * u});

  CoercivityReport r;
  const auto [kappa, delta] = V.coercivity();
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) r.worst_margin = std::min(r.worst_margin, s.s - kappa * s.u2 + delta * s.au);
  r.declared_pass = r.worst_margin >= -1e-12 * std::max(1.0, std::abs(kappa));

  // Smallest delta making (kappa, delta) valid on the samples.
  auto delta_for = [&](double k) {
    double d = 0.0;
    for (const auto& s : samples) {
      const double need = k * s.u2 - s.s;
      if (need <= 0.0) continue;
      if (s.au == 0.0) return std::numeric_limits<double>::infinity();
      d = std::max(d, need / s.au);
    }
    return d;
  };
  if (r.declared_pass) {
    r.kappa_fit = kappa;
    r.delta_fit = delta_for(kappa);
  } else {
    // Maximize kappa - delta(kappa), concave piecewise linear, over [0, kappa_cap].
    const double cap = kappa > 0.0 ? kappa : 1.0;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (m1 - delta_for(m1) < m2 - delta_for(m2))
        lo = m1;
      else
        hi = m2;
    }
    const double k = 0.5 * (lo + hi);
    r.kappa_fit = k - delta_for(k) >= -delta_for(0.0) ? k : 0.0;
    r.delta_fit = delta_for(r.kappa_fit);
  }
  r.fit_pass = r.kappa_fit > 1e-12 && std::isfinite(r.delta_fit);
  return r;
}

}  // namespace ulpar
