#include "checks.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "presets.hpp"
#include "ulpar/energy.hpp"
#include "ulpar/error.hpp"
#include "ulpar/exponents.hpp"
#include "ulpar/lab.hpp"
#include "ulpar/longtime.hpp"
#include "ulpar/norms.hpp"
#include "ulpar/picard.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/solver.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar::checks {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double rel_error(const Field& a, const Field& ref) {
  return std::sqrt((a - ref).l2_squared() / std::max(ref.l2_squared(), 1e-300));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckResult dense_oracle(const CheckOptions& o) {
  CheckResult r;
  const Grid1D g(8.0, 16);
  const auto B = make_dirichlet_laplacian(4, std::numbers::pi);
  const auto op = assemble(g, B);
  const std::size_t N = g.size() * B.modes();
  Eigen::MatrixXd A(N, N);
  for (std::size_t c = 0; c < N; ++c) {
    std::vector<double> e(N, 0.0);
    e[c] = 1.0;
    const Field col = op.apply(Field(g, B.modes(), std::move(e)));
    for (std::size_t i = 0; i < N; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = col.data()[i];
  }
  double worst = 0.0;
  for (double t : {0.05, 0.5, 2.0}) {
    const Eigen::MatrixXd E = (-t * A).exp();
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Field u = random_smooth_field(g, B.modes(), o.seed + s, 8, 1.0);
      const auto ud = u.data();
      const Eigen::VectorXd v = E * Eigen::Map<const Eigen::VectorXd>(ud.data(), static_cast<Eigen::Index>(N));
      const Field ref(g, B.modes(), std::vector<double>(v.data(), v.data() + N));
      worst = std::max(worst, rel_error(semigroup_exact(op, t, u), ref));
    }
  }
  r.pass = worst <= 1e-10;
  r.detail = "max relative error " + fmt(worst) + " (limit 1e-10) over 15 fields and t in {0.05, 0.5, 2}";
  r.metrics = {{"max_relative_error", worst}};
  return r;
}

CheckResult contour(const CheckOptions& o) {
  CheckResult r;
  const Grid1D g(8.0, 64);
  const auto B = make_dirichlet_laplacian(4, 1.0);
  const auto op = assemble(g, B);
  const Field u = random_smooth_field(g, B.modes(), o.seed, 16, 1.0);
  const double t = 0.1;
  const Field ref = semigroup_exact(op, t, u);
  std::vector<double> errs;
  bool halving = true;
  std::string ladder;
  for (int n : {8, 16, 32, 64}) {
    ContourSpec spec;
    spec.nodes = n;
    const double e = rel_error(semigroup_contour(op, t, u, spec), ref);
    if (!errs.empty() && errs.back() > 1e-12 && e > 0.5 * errs.back()) halving = false;
    errs.push_back(e);
    ladder += (ladder.empty() ? "" : ", ") + std::to_string(n) + ":" + fmt(e);
  }
  r.pass = errs.back() <= 1e-6 && halving;
  r.detail = "relative error by node count {" + ladder + "}; limit 1e-6 at 64, at least halving per doubling";
  r.metrics = {{"error_64", errs.back()}};
  return r;
}

CheckResult sectorial(const CheckOptions& o) {
  CheckResult r;
  // Variable diffusion keeps A self-adjoint while exercising the iterative resolvent.
  const Grid1D g(8.0, 32);
  const auto B = make_dirichlet_laplacian(2, 1.0);
  Coefficients co;
  for (std::size_t k = 0; k < g.size(); ++k) co.a.push_back(1.0 + 0.3 * std::cos(std::numbers::pi * g.x(k) / 4.0));
  const auto op = assemble(g, B, co);
  SectorParams sec;
  sec.phi = std::numbers::pi / 4;
  sec.M = std::sqrt(2.0) + 1e-6;
  const auto rep = verify_sectorial(op, sec, 200, o.seed);
  r.pass = rep.pass && rep.samples.size() == 200;
  r.detail = "M_observed " + fmt(rep.M_observed) + " over " + std::to_string(rep.samples.size()) +
             " samples (limit sqrt 2 + 1e-6)" + (rep.failure.empty() ? "" : "; " + rep.failure);
  r.metrics = {{"M_observed", rep.M_observed}};
  return r;
}

CheckResult sandwich(const CheckOptions& o) {
  CheckResult r;
  const Grid1D g(16.0, 512);
  const std::size_t M = 3;
  const auto centers = lattice_centers(g, 0.5);
  int violations = 0;
  double tightest = 1e300;
  for (double mu : {0.5, 1.0, 2.0}) {
    const auto consts = equivalence_constants(g, 2.0, mu, centers);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const Field u = random_smooth_field(g, M, o.seed * 7919 + s, 4 + 8 * (s % 6), 0.5 + 0.1 * static_cast<double>(s % 7));
      const double ul = ul_norm(u, 2.0);
      const double sw = sup_weighted_norm(u, 2.0, mu, centers).value;
      if (sw < consts.c1 * ul || sw > consts.c2 * ul) ++violations;
      tightest = std::min({tightest, sw / (consts.c1 * ul), consts.c2 * ul / sw});
    }
  }
  r.pass = violations == 0;
  r.detail = std::to_string(violations) + " violations over 150 cases; tightest margin ratio " + fmt(tightest);
  r.metrics = {{"violations", violations}, {"tightest_ratio", tightest}};
  return r;
}

CheckResult integrated(const CheckOptions& o) {
  CheckResult r;
  const Grid1D g(8.0, 128);
  const auto B = make_dirichlet_laplacian(4, 2.0);
  const auto op = assemble(g, B);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Field u = random_smooth_field(g, B.modes(), o.seed * 31 + s, 24, 1.0);
    for (double t : {0.1, 1.0}) worst = std::max(worst, integrated_identity_defect(op, t, u));
  }
  r.pass = worst <= 1e-8;
  r.detail = "max relative defect " + fmt(worst) + " (limit 1e-8) over 20 fields and t in {0.1, 1}";
  r.metrics = {{"max_defect", worst}};
  return r;
}

CheckResult dichotomy(const CheckOptions&) {
  CheckResult r;
  const auto ladder = standard_ladder();
  NormSpec linf;
  linf.kind = NormKind::flat;
  linf.p = kInf;
  NormSpec ul;
  ul.kind = NormKind::ul;
  ul.p = 2.0;

  PathologyGenerator chirp;
  chirp.kind = PathologyKind::chirp;
  PathologyGenerator blocks;
  blocks.kind = PathologyKind::mode_blocks;
  PathologyGenerator control;
  control.kind = PathologyKind::smooth_control;

  const auto c = refinement_study(chirp, linf, ladder);
  const auto b = refinement_study(blocks, ul, ladder);
  const auto s = refinement_study(control, linf, ladder);

  bool chirp_ok = c.nondecreasing;
  std::string cj, bj, sj;
  for (const auto& e : c.entries) {
    chirp_ok = chirp_ok && e.jump.infimum >= 0.5;
    cj += (cj.empty() ? "" : ", ") + fmt(e.jump.infimum);
  }
  bool blocks_ok = b.nondecreasing && b.entries.back().jump.infimum >= 0.3;
  for (const auto& e : b.entries) {
    blocks_ok = blocks_ok && e.jump.infimum >= e.block_bound;
    bj += (bj.empty() ? "" : ", ") + fmt(e.jump.infimum) + " (bound " + fmt(e.block_bound) + ")";
  }
  bool control_ok = true;
  double worst_exp = 1e300, worst_jump = 0.0;
  for (const auto& e : s.entries) {
    control_ok = control_ok && e.jump.infimum <= 0.01 && e.jump.continuity_exponent >= 0.9;
    worst_exp = std::min(worst_exp, e.jump.continuity_exponent);
    worst_jump = std::max(worst_jump, e.jump.infimum);
    sj += (sj.empty() ? "" : ", ") + fmt(e.jump.infimum);
  }
  r.pass = chirp_ok && blocks_ok && control_ok;
  r.detail = "chirp Linf jumps {" + cj + "}; mode_blocks L2ul jumps {" + bj + "}; control jumps {" + sj +
             "} exponent >= " + fmt(worst_exp);
  r.metrics = {{"chirp_finest", c.entries.back().jump.infimum},
               {"blocks_finest", b.entries.back().jump.infimum},
               {"control_max", worst_jump},
               {"control_exponent_min", worst_exp}};
  return r;
}

CheckResult etd_orders(const CheckOptions&) {
  CheckResult r;
  const Grid1D g(8.0, 16);
  const auto B = make_matrix_system(1, 1.0);
  const auto op = assemble(g, B);
  // u' = -u + 2u - u^2 = u (1 - u)
  const Nonlinearity F = Nonlinearity::mode_polynomial({0.0, 2.0, -1.0});
  const double u0 = 0.1, T = 2.0;
  const double exact = u0 * std::exp(T) / (1.0 - u0 + u0 * std::exp(T));
  const Field init(g, 1, std::vector<double>(g.size(), u0));
  double orders[2];
  std::string text;
  for (Scheme sch : {Scheme::ETD1, Scheme::ETD2RK}) {
    std::vector<double> dts, errs;
    for (int k = 0; k < 6; ++k) {
      const double dt = 0.2 / std::pow(2.0, k);
      Scenario s{op, F, init, sch, dt, T, {}, 1000000, 0, {}};
      const auto rec = solve(s);
      const Field& uT = rec.snapshots.back().field;
      double e = 0.0;
      for (double v : uT.data()) e = std::max(e, std::abs(v - exact));
      dts.push_back(dt);
      errs.push_back(e);
    }
    const double p = fit_slope(dts, errs);
    orders[sch == Scheme::ETD1 ? 0 : 1] = p;
    text += std::string(to_string(sch)) + " order " + fmt(p) + " (errors " + fmt(errs.front()) + " .. " +
            fmt(errs.back()) + "); ";
  }
  r.pass = std::abs(orders[0] - 1.0) <= 0.1 && std::abs(orders[1] - 2.0) <= 0.1;
  r.detail = text + "targets 1 and 2 within 0.1";
  r.metrics = {{"order_etd1", orders[0]}, {"order_etd2rk", orders[1]}};
  return r;
}

CheckResult picard(const CheckOptions& o) {
  CheckResult r;
  const Grid1D g(8.0, 64);
  const auto B = make_dirichlet_laplacian(4, 2.0);
  const auto op = assemble(g, B);
  NonlinearityMeta meta;
  meta.constant = 20.0;
  const Nonlinearity F =
      Nonlinearity::pointwise([](double, double u) { return 20.0 * std::sin(u); }, meta, "lipschitz_sin");
  const Field u0 = random_smooth_field(g, B.modes(), o.seed, 6, 1.0);
  PicardOptions po;
  po.seed = o.seed;
  po.horizon = 2.0;
  const auto lambdas = log_grid(1.0, 1e4, 10);
  const auto rep = picard_probe(op, F, u0, lambdas, po);
  std::string f;
  for (std::size_t i = 0; i < rep.factors.size(); ++i) f += (f.empty() ? "" : ", ") + fmt(rep.factors[i]);
  r.pass = rep.nonincreasing && rep.reached_half && rep.lambda_half < 1e4;
  r.detail = "factors {" + f + "} over lambda in [1, 1e4]; first <= 1/2 at lambda " + fmt(rep.lambda_half);
  r.metrics = {{"lambda_half", rep.lambda_half}, {"factor_last", rep.factors.back()}};
  return r;
}

CheckResult exponents(const CheckOptions&) {
  CheckResult r;
  const auto w = admissible_beta(Rational(0), Rational(2), 3);
  bool ok = w.lower == Rational(1, 2) && w.upper == Rational(1);
  std::string bad;
  for (const Rational& gamma : {Rational(0), Rational(1), Rational(7, 2), Rational(399, 100), Rational(4),
                                Rational(401, 100), Rational(5), Rational(10)}) {
    const bool g_ok = admissible_beta(Rational(0), gamma, 3).gradient_ok;
    if (g_ok != (gamma < Rational(4))) {
      ok = false;
      bad += " " + gamma.str();
    }
  }
  r.pass = ok;
  r.detail = "admissible_beta(0,2,3) = (" + w.lower.str() + ", " + w.upper.str() +
             "); gradient_ok(d=3, alpha=0) iff gamma < 4" + (bad.empty() ? "" : "; mismatches at" + bad);
  return r;
}

// Weighted truncated energies at x = 0 along a recorded run.
struct EnergyRun {
  std::vector<double> t, flat, weighted;
  double max_gap = 0.0;
  double e0 = 0.0;
};

EnergyRun corridor_energy_run(double dt, double horizon, std::size_t stride) {
  presets::CorridorParams p;
  p.dt = dt;
  const Scenario s = presets::corridor_scenario(p, horizon);
  const Potential V = presets::corridor_potential(p);
  const auto& B = s.op.transverse();
  const Stepper stepper(s.op, s.F, dt, s.scheme);
  const EnergySpec flat = EnergySpec::formal_flat();
  const EnergySpec weighted = EnergySpec::truncated(0.1, 0.0);
  EnergyRun run;
  Field u = s.u0;
  double prev = truncated_energy(u, &V, B, flat);
  run.e0 = prev;
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i > 0) {
      u = stepper.step(u);
      const double e = truncated_energy(u, &V, B, flat);
      run.max_gap = std::max(run.max_gap, e - prev);
      prev = e;
    }
    if (i % stride == 0) {
      run.t.push_back(static_cast<double>(i) * dt);
      run.flat.push_back(prev);
      run.weighted.push_back(truncated_energy(u, &V, B, weighted));
    }
  }
  return run;
}

double ledger_gap(const presets::CorridorParams& p, std::size_t steps, std::size_t stride, bool fault,
                  std::size_t* rows_out) {
  const Scenario s = presets::corridor_scenario(p, 1.0);
  const Potential V = presets::corridor_potential(p);
  const Stepper stepper(s.op, s.F, p.dt, s.scheme);
  EnergySpec spec = EnergySpec::truncated(0.1, 0.0);
  spec.ledger_fault = fault;
  const auto rows = ledger_along(stepper, V, s.op.transverse(), spec, s.u0, steps, stride);
  double worst = 0.0;
  for (const auto& row : rows)
    worst = std::max(worst, std::abs(row.terms.total - row.centered) / std::max(std::abs(row.centered), 1e-300));
  if (rows_out) *rows_out = rows.size();
  return worst;
}

CheckResult energy(const CheckOptions& o) {
  CheckResult r;
  const EnergyRun run = corridor_energy_run(1e-3, 2.0, 20);
  const double rel_gap = run.max_gap / std::abs(run.e0);
  presets::CorridorParams p;
  p.dt = 1e-4;
  std::size_t rows = 0;
  const double lg = ledger_gap(p, 400, 40, o.ledger_fault, &rows);
  const double nu = gronwall_max_nu(run.t, run.weighted);
  r.pass = rel_gap <= 1e-6 && lg <= 1e-4 && nu > 0.0;
  r.detail = "flat energy max step increase " + fmt(rel_gap) + " of |E(0)| (limit 1e-6); ledger relative gap " +
             fmt(lg) + " over " + std::to_string(rows) + " rows (limit 1e-4); Gronwall nu " + fmt(nu) +
             " at mu = 0.1";
  r.metrics = {{"flat_gap", rel_gap}, {"ledger_gap", lg}, {"nu", nu}};
  return r;
}

CheckResult ledger_small(const CheckOptions& o) {
  CheckResult r;
  presets::CorridorParams p;
  p.dt = 1e-4;
  std::size_t rows = 0;
  const double lg = ledger_gap(p, 100, 20, o.ledger_fault, &rows);
  r.pass = lg <= 1e-4;
  r.detail = "ledger relative gap " + fmt(lg) + " over " + std::to_string(rows) + " rows (limit 1e-4)";
  r.metrics = {{"ledger_gap", lg}};
  return r;
}

CheckResult longtime(const CheckOptions&) {
  CheckResult r;
  presets::CorridorParams p;
  const Scenario s = presets::corridor_scenario(p, 10.0);
  LongtimeOptions lo;
  lo.record_stride = 20;
  const auto rep = longtime_experiment(s, presets::corridor_potential(p), lo);
  r.pass = rep.pass && !rep.blowup;
  r.detail = "sup over [0.1, T] " + fmt(rep.sup_T) + ", over [0.1, 2T] " + fmt(rep.sup_2T) + ", relative change " +
             fmt(rep.relative_change) + " (limit 0.02); blowup " + (rep.blowup ? "yes" : "no") + "; m_E " +
             fmt(rep.m_E) + "; shifted by the energy floor " + fmt(rep.m_E_shifted) + (rep.chain_vacuous ? " (vacuous)" : "");
  r.metrics = {{"sup_T", rep.sup_T}, {"sup_2T", rep.sup_2T}, {"relative_change", rep.relative_change}};
  return r;
}

CheckResult embedding(const CheckOptions&) {
  CheckResult r;
  const Grid1D g(8.0, 4096);
  const auto B = make_dirichlet_laplacian(1, 1.0);
  const auto op = assemble(g, B);
  const auto centers = lattice_centers(g, 0.5);
  std::vector<double> hi, lo;
  for (int k = 0; k <= 6; ++k) {
    const double sigma = 1.0 / std::pow(2.0, k);
    const Field u = Field::from_function(g, 1, [sigma](double x, std::size_t) {
      return std::exp(-0.5 * x * x / (sigma * sigma));
    });
    const double num = flat_norm(u, kInf);
    hi.push_back(num / x_theta_norm(op, 0.35, u, 1.0, centers).value);
    lo.push_back(num / x_theta_norm(op, 0.15, u, 1.0, centers).value);
  }
  const double variation = *std::max_element(hi.begin(), hi.end()) / *std::min_element(hi.begin(), hi.end());
  bool grows = true;
  for (std::size_t i = 1; i < lo.size(); ++i) grows = grows && lo[i] > lo[i - 1];
  r.pass = variation < 2.0 && grows;
  std::string a, b;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    a += (a.empty() ? "" : ", ") + fmt(hi[i]);
    b += (b.empty() ? "" : ", ") + fmt(lo[i]);
  }
  r.detail = "beta 0.35 ratios {" + a + "} variation " + fmt(variation) + " (limit 2); beta 0.15 ratios {" + b +
             "} " + (grows ? "increasing" : "not increasing");
  r.metrics = {{"variation_035", variation}, {"ratio_growth_015", lo.back() / lo.front()}};
  return r;
}

}  // namespace

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> list = {
      {"dense_oracle", 1, "semigroup matches dense matrix exponential", 1.0, true, dense_oracle},
      {"contour", 2, "hyperbolic contour quadrature converges", 5.0, true, contour},
      {"sectorial", 3, "sectorial resolvent bound on the self-adjoint case", 10.0, true, sectorial},
      {"weighted_sandwich", 4, "weighted norms sandwich the ul norm", 30.0, true, sandwich},
      {"integrated_identity", 5, "integrated semigroup identity", 10.0, true, integrated},
      {"ill_posedness", 6, "jump at t = 0 for pathological data, continuity for smooth data", 180.0, false,
       dichotomy},
      {"etd_orders", 7, "ETD1 and ETD2RK convergence orders", 30.0, true, etd_orders},
      {"picard", 8, "Picard map contraction in the lambda norm", 60.0, true, picard},
      {"exponents", 9, "exact exponent conditions", 1.0, true, exponents},
      {"energy", 10, "energy dissipation, ledger identity and Gronwall bound", 120.0, false, energy},
      {"longtime", 11, "long-time boundedness under horizon doubling", 300.0, false, longtime},
      {"embedding", 12, "embedding exponent probe on concentrating Gaussians", 120.0, false, embedding},
      {"ledger", 0, "dissipation ledger on a small corridor run", 30.0, true, ledger_small},
  };
  return list;
}

CheckResult run_check(const CheckInfo& info, const CheckOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = info.run(opts);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.id = info.id;
  r.criterion = info.criterion;
  r.title = info.title;
  r.budget = info.budget;
  if (r.seconds > r.budget) {
    r.pass = false;
    r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(r.budget) + " s";
  }
  return r;
}

std::vector<CheckResult> run_suite(const std::string& suite, const CheckOptions& opts,
                                   const std::function<void(const CheckResult&)>& progress) {
  if (suite != "fast" && suite != "full" && suite != "acceptance")
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "' (expected fast, full or acceptance)");
  std::vector<CheckResult> out;
  for (const auto& info : registry()) {
    if (suite == "fast" && !info.fast) continue;
    if (suite == "acceptance" && info.criterion == 0) continue;
    out.push_back(run_check(info, opts));
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace ulpar::checks
