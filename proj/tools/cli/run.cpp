#include "run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "presets.hpp"
#include "svg.hpp"
#include "ulpar/energy.hpp"
#include "ulpar/error.hpp"
#include "ulpar/lab.hpp"
#include "ulpar/longtime.hpp"
#include "ulpar/norms.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/snapshot.hpp"
#include "ulpar/solver.hpp"
#include "ulpar/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ulpar::cli {

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp);
  }
  fs::rename(tmp, path);
}

namespace {

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

TransverseOperator build_transverse(const TransverseCfg& t) {
  TransverseOperator B = [&] {
    if (t.kind == "dirichlet") return make_dirichlet_laplacian(t.modes, t.length);
    if (t.kind == "fractional") return make_fractional(make_dirichlet_laplacian(t.modes, t.length), t.sigma);
    if (t.kind == "bounded_identity") return make_bounded_identity(t.modes, t.length, t.value);
    if (t.kind == "matrix_system") return make_matrix_system(t.modes, t.value);
    presets::AdvectiveParams p;
    p.modes = t.modes;
    p.section = t.length;
    p.strength = t.strength;
    p.fd_points = t.fd_points;
    return presets::advective_operator(p);
  }();
  return t.shift != 0.0 ? B.shifted(t.shift) : B;
}

Coefficients build_coefficients(const CoefficientCfg& c, const Grid1D& g) {
  Coefficients co;
  if (c.a_amplitude != 0.0 || c.a_mean != 1.0)
    for (std::size_t k = 0; k < g.size(); ++k) co.a.push_back(c.a_mean + c.a_amplitude * std::cos(c.a_wavenumber * g.x(k)));
  if (c.l1 != 0.0) co.l1.assign(g.size(), c.l1);
  if (c.l2 != 0.0) co.l2.assign(g.size(), c.l2);
  return co;
}

presets::CorridorParams corridor_params(const ScenarioCfg& s) {
  presets::CorridorParams p;
  p.L = s.grid.L;
  p.n_x = s.grid.n_x;
  p.modes = s.transverse.modes;
  p.section = s.transverse.length;
  p.corridor_center = 0.5 * s.transverse.length;
  p.k = s.nonlinearity.k;
  p.a = s.nonlinearity.a;
  p.amplitude = s.initial.amplitude;
  p.plateau = s.initial.width;
  p.dt = s.dt;
  return p;
}

std::optional<Potential> build_potential(const ScenarioCfg& s) {
  const auto& n = s.nonlinearity;
  if (n.kind == "quadratic") return Potential::quadratic(n.kappa);
  if (n.kind == "double_well") return Potential::double_well();
  if (n.kind == "corridor") return presets::corridor_potential(corridor_params(s));
  return std::nullopt;
}

Nonlinearity build_nonlinearity(const ScenarioCfg& s, const std::optional<Potential>& V) {
  const auto& n = s.nonlinearity;
  if (V) return V->as_force();
  if (n.kind == "polynomial") return Nonlinearity::mode_polynomial(n.coeffs);
  if (n.kind == "sin") {
    NonlinearityMeta meta;
    meta.constant = std::abs(n.lipschitz);
    const double c = n.lipschitz;
    return Nonlinearity::pointwise([c](double, double u) { return c * std::sin(u); }, meta, "sin");
  }
  return Nonlinearity::zero();
}

Field build_initial(const ScenarioCfg& s, const Grid1D& g, const TransverseOperator& B, std::uint64_t seed) {
  const auto& i = s.initial;
  const std::size_t M = B.modes();
  const double amp = i.amplitude, w = i.width;
  if (i.generator == "gaussian")
    return Field::from_function(g, M, [=](double x, std::size_t j) { return j == 0 ? amp * std::exp(-0.5 * x * x / (w * w)) : 0.0; });
  if (i.generator == "plateau")
    return Field::from_function(g, M, [=](double x, std::size_t j) {
      return j == 0 ? amp * smooth_step(w + 1.0 - std::abs(x)) : 0.0;
    });
  if (i.generator == "random") return random_smooth_field(g, M, i.seed.value_or(seed), i.max_index, amp);
  if (i.generator == "corridor") return presets::corridor_initial(corridor_params(s), g, B);
  if (i.generator == "snapshot") {
    const Snapshot snap = read_snapshot(i.path);
    if (!(snap.field.grid() == g) || snap.field.modes() != M)
      throw Error(ErrorCode::GridMismatch, "snapshot " + i.path + " does not match the scenario grid and modes");
    return snap.field;
  }
  PathologyGenerator gen;
  gen.kind = pathology_from_string(i.generator);
  return amp * generate(gen, g, B);
}

NormSpec norm_spec(const DiagnosticCfg& d) {
  NormSpec n;
  n.p = d.p;
  n.order = d.order;
  n.alpha = d.alpha;
  n.mu = d.mu;
  if (d.norm == "ul") n.kind = NormKind::ul;
  else if (d.norm == "flat") n.kind = NormKind::flat;
  else if (d.norm == "sobolev_ul") n.kind = NormKind::sobolev_ul;
  else if (d.norm == "weighted") n.kind = NormKind::weighted;
  else n.kind = NormKind::ul_sup_weighted;
  return n;
}

std::string g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

void write_plot(const std::string& path, const PlotSpec& spec, const std::vector<Series>& series) {
  write_atomic(path, line_plot_svg(spec, series));
}

}  // namespace

BlockOutcome run_scenario(const ScenarioCfg& cfg, const std::string& out_dir, std::uint64_t seed) {
  BlockOutcome out;
  out.name = cfg.name;
  out.kind = "scenario";
  const fs::path dir = fs::path(out_dir) / cfg.name;
  fs::create_directories(dir / "snapshots");

  const Grid1D g(cfg.grid.L, cfg.grid.n_x);
  const TransverseOperator B = build_transverse(cfg.transverse);
  const EvolutionOperator op = assemble(g, B, build_coefficients(cfg.coefficients, g));
  const std::optional<Potential> V = build_potential(cfg);
  const Nonlinearity F = build_nonlinearity(cfg, V);
  const Field u0 = build_initial(cfg, g, B, seed);

  Scenario s{op, F, u0, cfg.scheme, cfg.dt, cfg.T, {}, cfg.record_stride, cfg.snapshot_stride, {}};
  const TransverseOperator& Bs = s.op.transverse();
  for (const auto& d : cfg.diagnostics) {
    const NormSpec spec = norm_spec(d);
    s.diagnostics.push_back({d.name, [spec, &Bs](const Field& u, double) { return norm(u, spec, &Bs); }});
  }
  const EnergySpec weighted = EnergySpec::truncated(cfg.energy.mu, cfg.energy.center);
  const EnergySpec flat = EnergySpec::formal_flat();
  if (cfg.energy.enabled) {
    const Potential* pv = &*V;
    s.diagnostics.push_back({"energy_weighted", [pv, &Bs, weighted](const Field& u, double) {
                               return truncated_energy(u, pv, Bs, weighted);
                             }});
    s.diagnostics.push_back({"energy_flat", [pv, &Bs, flat](const Field& u, double) {
                               return truncated_energy(u, pv, Bs, flat);
                             }});
  }
  if (cfg.blowup_threshold > 0.0)
    s.blowup = BlowupMonitor{"ul", [](const Field& u) { return ul_norm(u, 2.0); }, cfg.blowup_threshold};

  const TrajectoryRecord rec = solve(s);
  {
    std::ostringstream os;
    write_trajectory_csv(os, rec);
    write_atomic((dir / "trajectory.csv").string(), os.str());
  }
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%04zu.txt", i);
    write_snapshot((dir / "snapshots" / name).string(), rec.snapshots[i].field, rec.snapshots[i].time);
  }
  std::vector<Series> series;
  for (const auto& c : rec.columns)
    if (c.rfind("energy", 0) != 0) series.push_back({c, rec.times, rec.column(c)});
  write_plot((dir / "trajectory.svg").string(), {cfg.name + " diagnostics", "t", "value", false, false}, series);

  json j;
  j["name"] = cfg.name;
  j["status"] = to_string(rec.status);
  j["steps"] = rec.steps;
  j["warnings"] = rec.warnings;
  if (rec.status != Termination::completed) {
    j["hitting_time"] = rec.hitting_time;
    j["message"] = rec.message;
    if (!cfg.gates.allow_blowup) {
      out.pass = false;
      out.message = std::string("run ended with status ") + to_string(rec.status) + ": " + rec.message;
    }
  }
  json finals = json::object();
  if (!rec.values.empty())
    for (std::size_t c = 0; c < rec.columns.size(); ++c) finals[rec.columns[c]] = rec.values.back()[c];
  j["final"] = finals;

  if (cfg.energy.enabled && rec.status == Termination::completed) {
    const auto t = rec.times;
    const auto ew = rec.column("energy_weighted");
    const auto ef = rec.column("energy_flat");
    const double nu = gronwall_max_nu(t, ew);
    double gap = 0.0;
    for (std::size_t i = 1; i < ef.size(); ++i) gap = std::max(gap, ef[i] - ef[i - 1]);
    const double rel_gap = gap / std::max(std::abs(ef.front()), 1e-300);
    j["energy"] = {{"mu", cfg.energy.mu},
                   {"center", cfg.energy.center},
                   {"gronwall_nu", nu},
                   {"flat_energy_max_increase_between_records", rel_gap},
                   {"floor", energy_floor(g, *V, Bs, weighted)}};
    if (cfg.gates.gronwall && !(nu > 0.0)) {
      out.pass = false;
      out.message += "Gronwall bisection found no positive nu; ";
    }
    if (cfg.gates.flat_energy_gap && rel_gap > *cfg.gates.flat_energy_gap) {
      out.pass = false;
      out.message += "flat energy increased by " + g17(rel_gap) + " of |E(0)|; ";
    }
    write_plot((dir / "energy.svg").string(), {cfg.name + " energies", "t", "energy", false, false},
               {{"weighted", t, ew}, {"flat", t, ef}});
    if (cfg.energy.ledger) {
      const double ldt = cfg.energy.ledger_dt > 0.0 ? cfg.energy.ledger_dt : cfg.dt;
      const Stepper stepper(s.op, s.F, ldt, cfg.scheme);
      const auto rows = ledger_along(stepper, *V, Bs, weighted, u0, cfg.energy.ledger_steps, cfg.energy.ledger_stride);
      std::ostringstream os;
      write_ledger_csv(os, rows);
      write_atomic((dir / "ledger.csv").string(), os.str());
      double worst = 0.0;
      for (const auto& r : rows)
        worst = std::max(worst, std::abs(r.terms.total - r.centered) / std::max(std::abs(r.centered), 1e-300));
      j["energy"]["ledger_relative_gap"] = worst;
      j["energy"]["ledger_dt"] = ldt;
      if (cfg.gates.ledger_gap && worst > *cfg.gates.ledger_gap) {
        out.pass = false;
        out.message += "ledger gap " + g17(worst) + " exceeds " + g17(*cfg.gates.ledger_gap) + "; ";
      }
    }
  }

  if (cfg.longtime.enabled) {
    LongtimeOptions lo;
    lo.epsilon = cfg.longtime.epsilon;
    lo.R1 = cfg.longtime.R1;
    lo.tolerance = cfg.longtime.tolerance;
    lo.mu = cfg.energy.mu;
    lo.record_stride = cfg.record_stride;
    const auto rep = longtime_experiment(s, *V, lo);
    j["longtime"] = {{"T", rep.T},
                     {"sup_T", rep.sup_T},
                     {"sup_2T", rep.sup_2T},
                     {"relative_change", rep.relative_change},
                     {"pass", rep.pass},
                     {"blowup", rep.blowup},
                     {"hitting_time", rep.hitting_time},
                     {"m_E", rep.m_E},
                     {"m_E_above_floor", rep.m_E_shifted},
                     {"chain_ok", rep.chain_ok},
                     {"beta_window", {rep.window.lower.str(), rep.window.upper.str()}}};
    write_plot((dir / "longtime.svg").string(), {cfg.name + " over [0, 2T]", "t", "norm", false, false},
               {{"H2 and D(B) ul", rep.times, rep.h2_norm}, {"H1 and D(B^1/2) ul", rep.times, rep.h1_norm}});
    if (!rep.pass) {
      out.pass = false;
      out.message += "long-time bound changed by " + g17(rep.relative_change) + " under horizon doubling; ";
    }
  }
  j["pass"] = out.pass;
  out.summary = j;
  write_atomic((dir / "summary.json").string(), j.dump(2) + "\n");
  return out;
}

BlockOutcome run_lab(const LabCfg& cfg, const std::string& out_dir, std::uint64_t seed) {
  BlockOutcome out;
  out.name = cfg.name;
  out.kind = "lab";
  const fs::path dir = fs::path(out_dir) / cfg.name;
  fs::create_directories(dir);

  NormSpec spec;
  if (cfg.norm == "linf") {
    spec.kind = NormKind::flat;
    spec.p = kInf;
  } else {
    spec.kind = NormKind::ul;
    spec.p = 2.0;
  }
  const auto tg = log_grid(cfg.t_min, cfg.t_max, cfg.t_count);
  const auto study = refinement_study(cfg.generator, spec, cfg.ladder, cfg.section_length, tg);

  json j;
  j["name"] = cfg.name;
  j["generator"] = {{"kind", to_string(cfg.generator.kind)},
                    {"block_spacing", cfg.generator.block_spacing},
                    {"plateau", cfg.generator.plateau},
                    {"blend", cfg.generator.blend},
                    {"cutoff_margin", cfg.generator.cutoff_margin}};
  j["norm"] = cfg.norm;
  j["section_length"] = cfg.section_length;
  j["nondecreasing"] = study.nondecreasing;
  std::ostringstream csv;
  csv << "L,n_x,modes,t,distance\n";
  std::vector<Series> curves;
  for (const auto& e : study.entries) {
    json r = {{"L", e.rung.L},
              {"n_x", e.rung.n_x},
              {"modes", e.rung.modes},
              {"jump", e.jump.infimum},
              {"argmin_t", e.jump.argmin_t},
              {"continuity_exponent", e.jump.continuity_exponent},
              {"t", e.jump.t},
              {"distance", e.jump.distance}};
    if (cfg.generator.kind == PathologyKind::mode_blocks) r["block_bound"] = e.block_bound;
    j["ladder"].push_back(r);
    for (std::size_t i = 0; i < e.jump.t.size(); ++i)
      csv << g17(e.rung.L) << ',' << e.rung.n_x << ',' << e.rung.modes << ',' << g17(e.jump.t[i]) << ','
          << g17(e.jump.distance[i]) << '\n';
    curves.push_back({"L=" + g17(e.rung.L), e.jump.t, e.jump.distance});
  }
  write_atomic((dir / "jumps.csv").string(), csv.str());
  write_plot((dir / "jumps.svg").string(),
             {cfg.name + ": distance to the initial data", "t", "distance (" + cfg.norm + ")", true, true}, curves);

  if (cfg.classifier) {
    const auto& rung = cfg.ladder.back();
    const Grid1D g(rung.L, rung.n_x);
    const Field u = generate(cfg.generator, g, make_dirichlet_laplacian(rung.modes, cfg.section_length));
    const auto c = strong_vs_weak_classifier(u);
    j["classifier"] = {{"ul_s_candidate", c.ul_s_candidate},
                       {"shifts", c.curve.shifts},
                       {"modulus", c.curve.values},
                       {"reference", c.curve.reference}};
    write_plot((dir / "modulus.svg").string(), {cfg.name + ": translation modulus", "shift", "ul distance", true, true},
               {{"modulus", c.curve.shifts, c.curve.values}});
  }
  if (cfg.density_gap) {
    const auto& rung = cfg.ladder.front();
    const Grid1D g(rung.L, rung.n_x);
    const auto B = make_dirichlet_laplacian(rung.modes, cfg.section_length);
    const Field u = generate(cfg.generator, g, B);
    Corpus corpus;
    corpus.R = cfg.density_gap->R;
    corpus.kappa_max = cfg.density_gap->kappa_max;
    corpus.max_mode = cfg.density_gap->max_mode;
    corpus.constraint = cfg.density_gap->constraint == "db_ul" ? CorpusConstraint::db_ul : CorpusConstraint::h1_ul;
    const auto rep = density_gap(u, B, corpus, cfg.density_gap->restarts, cfg.density_gap->iterations, seed);
    j["density_gap"] = {{"best", rep.best},
                        {"best_restart", rep.best_restart},
                        {"per_restart", rep.per_restart},
                        {"spread", rep.spread},
                        {"rung", {{"L", rung.L}, {"n_x", rung.n_x}, {"modes", rung.modes}}}};
  }
  const double finest = study.entries.back().jump.infimum;
  if (cfg.min_jump && finest < *cfg.min_jump) {
    out.pass = false;
    out.message = "finest jump " + g17(finest) + " below " + g17(*cfg.min_jump);
  }
  if (cfg.max_jump)
    for (const auto& e : study.entries)
      if (e.jump.infimum > *cfg.max_jump) {
        out.pass = false;
        out.message = "jump " + g17(e.jump.infimum) + " above " + g17(*cfg.max_jump) + " at L = " + g17(e.rung.L);
      }
  j["pass"] = out.pass;
  out.summary = j;
  write_atomic((dir / "report.json").string(), j.dump(2) + "\n");
  return out;
}

int run_config(const Config& cfg, std::ostream& log) {
  fs::create_directories(cfg.output_dir);
  const std::size_t n = cfg.scenarios.size() + cfg.lab.size();
  std::vector<BlockOutcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      BlockOutcome& o = outcomes[i];
      const bool is_scenario = i < cfg.scenarios.size();
      o.name = is_scenario ? cfg.scenarios[i].name : cfg.lab[i - cfg.scenarios.size()].name;
      o.kind = is_scenario ? "scenario" : "lab";
      try {
        o = is_scenario ? run_scenario(cfg.scenarios[i], cfg.output_dir, cfg.seed)
                        : run_lab(cfg.lab[i - cfg.scenarios.size()], cfg.output_dir, cfg.seed);
      } catch (const std::exception& e) {
        o.error = true;
        o.pass = false;
        o.message = e.what();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, cfg.threads));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, n); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  json summary;
  summary["seed"] = cfg.seed;
  summary["blocks"] = json::array();
  int code = 0;
  for (const auto& o : outcomes) {
    json b = {{"name", o.name}, {"kind", o.kind}, {"pass", o.pass}, {"error", o.error}, {"message", o.message}};
    if (!o.summary.is_null()) b["summary"] = o.summary;
    summary["blocks"].push_back(b);
    log << (o.error ? "ERROR" : o.pass ? "PASS " : "FAIL ") << ' ' << o.kind << ' ' << o.name
        << (o.message.empty() ? "" : ": " + o.message) << '\n';
    if (o.error) code = 1;
    else if (!o.pass && code == 0) code = 2;
  }
  write_atomic((fs::path(cfg.output_dir) / "summary.json").string(), summary.dump(2) + "\n");
  return code;
}

}  // namespace ulpar::cli
