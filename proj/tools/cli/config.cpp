#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ulpar::cli {

namespace {

class Reader {
 public:
  Reader(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) fail("expected a mapping");
  }

  void allow(std::initializer_list<const char*> keys) const {
    if (!node_ || node_.IsNull()) return;
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& kv : node_) {
      const auto k = kv.first.as<std::string>();
      if (!ok.count(k)) throw ConfigError(path_ + ": unknown key '" + k + "'");
    }
  }

  bool has(const char* key) const { return node_ && node_.IsMap() && node_[key]; }

  template <class T>
  void get(const char* key, T& out) const {
    if (!has(key)) return;
    try {
      out = node_[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(at(key) + ": value has the wrong type");
    }
  }

  template <class T>
  void get(const char* key, std::optional<T>& out) const {
    if (!has(key)) return;
    T v{};
    get(key, v);
    out = v;
  }

  Reader child(const char* key) const { return Reader(has(key) ? node_[key] : YAML::Node(), at(key)); }

  std::vector<Reader> list(const char* key) const {
    std::vector<Reader> out;
    if (!has(key)) return out;
    const YAML::Node seq = node_[key];
    if (!seq.IsSequence()) throw ConfigError(at(key) + ": expected a list");
    for (std::size_t i = 0; i < seq.size(); ++i)
      out.emplace_back(seq[i], at(key) + "[" + std::to_string(i) + "]");
    return out;
  }

  std::string at(const char* key) const { return path_ + "." + key; }
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(path_ + ": " + msg); }
  const std::string& path() const { return path_; }

 private:
  YAML::Node node_;
  std::string path_;
};

void require(bool ok, const std::string& where, const std::string& msg) {
  if (!ok) throw ConfigError(where + ": " + msg);
}

void one_of(const std::string& v, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(where + ": '" + v + "' is not one of " + list);
}

bool power_of_two(std::size_t n) { return n >= 16 && (n & (n - 1)) == 0; }

GridCfg read_grid(const Reader& r) {
  r.allow({"L", "n_x"});
  GridCfg g;
  r.get("L", g.L);
  r.get("n_x", g.n_x);
  require(g.L >= 8.0, r.at("L"), "half length must be at least 8");
  require(power_of_two(g.n_x), r.at("n_x"), "must be a power of two and at least 16");
  return g;
}

TransverseCfg read_transverse(const Reader& r) {
  r.allow({"kind", "modes", "length", "shift", "sigma", "value", "strength", "fd_points"});
  TransverseCfg t;
  r.get("kind", t.kind);
  r.get("modes", t.modes);
  r.get("length", t.length);
  r.get("shift", t.shift);
  r.get("sigma", t.sigma);
  r.get("value", t.value);
  r.get("strength", t.strength);
  r.get("fd_points", t.fd_points);
  one_of(t.kind, {"dirichlet", "fractional", "bounded_identity", "matrix_system", "advective"}, r.at("kind"));
  require(t.modes >= 1, r.at("modes"), "must be at least 1");
  require(t.length > 0.0, r.at("length"), "must be positive");
  require(t.sigma > 0.0, r.at("sigma"), "must be positive");
  return t;
}

CoefficientCfg read_coefficients(const Reader& r) {
  r.allow({"a_mean", "a_amplitude", "a_wavenumber", "l1", "l2"});
  CoefficientCfg c;
  r.get("a_mean", c.a_mean);
  r.get("a_amplitude", c.a_amplitude);
  r.get("a_wavenumber", c.a_wavenumber);
  r.get("l1", c.l1);
  r.get("l2", c.l2);
  require(c.a_mean > 0.0, r.at("a_mean"), "must be positive");
  return c;
}

NonlinearityCfg read_nonlinearity(const Reader& r) {
  r.allow({"kind", "coeffs", "lipschitz", "kappa", "k", "a"});
  NonlinearityCfg n;
  r.get("kind", n.kind);
  r.get("coeffs", n.coeffs);
  r.get("lipschitz", n.lipschitz);
  r.get("kappa", n.kappa);
  r.get("k", n.k);
  r.get("a", n.a);
  one_of(n.kind, {"zero", "polynomial", "sin", "quadratic", "double_well", "corridor"}, r.at("kind"));
  require(n.kind != "polynomial" || !n.coeffs.empty(), r.at("coeffs"), "polynomial needs coefficients");
  return n;
}

InitialCfg read_initial(const Reader& r) {
  r.allow({"generator", "amplitude", "width", "max_index", "seed", "path"});
  InitialCfg i;
  r.get("generator", i.generator);
  r.get("amplitude", i.amplitude);
  r.get("width", i.width);
  r.get("max_index", i.max_index);
  r.get("seed", i.seed);
  r.get("path", i.path);
  one_of(i.generator,
         {"gaussian", "plateau", "random", "corridor", "chirp", "mode_blocks", "smooth_control", "snapshot"},
         r.at("generator"));
  require(i.width > 0.0, r.at("width"), "must be positive");
  require(i.generator != "snapshot" || !i.path.empty(), r.at("path"), "snapshot generator needs a path");
  return i;
}

DiagnosticCfg read_diagnostic(const Reader& r) {
  r.allow({"name", "norm", "p", "order", "alpha", "mu"});
  DiagnosticCfg d;
  r.get("norm", d.norm);
  r.get("p", d.p);
  r.get("order", d.order);
  r.get("alpha", d.alpha);
  r.get("mu", d.mu);
  one_of(d.norm, {"ul", "flat", "sobolev_ul", "weighted", "sup_weighted"}, r.at("norm"));
  require(d.p >= 1.0, r.at("p"), "must be at least 1");
  require(d.order >= 0 && d.order <= 2, r.at("order"), "must be 0, 1 or 2");
  require(d.alpha >= 0.0, r.at("alpha"), "must be nonnegative");
  require(d.mu > 0.0, r.at("mu"), "must be positive");
  d.name = d.norm + "_p" + std::to_string(static_cast<int>(d.p)) + "_o" + std::to_string(d.order);
  r.get("name", d.name);
  return d;
}

ScenarioCfg read_scenario(const Reader& r) {
  r.allow({"name", "grid", "transverse", "coefficients", "nonlinearity", "initial", "scheme", "dt", "T",
           "record_stride", "snapshot_stride", "blowup_threshold", "diagnostics", "energy", "longtime", "gates"});
  ScenarioCfg s;
  r.get("name", s.name);
  require(!s.name.empty(), r.at("name"), "scenario needs a name");
  s.grid = read_grid(r.child("grid"));
  s.transverse = read_transverse(r.child("transverse"));
  s.coefficients = read_coefficients(r.child("coefficients"));
  s.nonlinearity = read_nonlinearity(r.child("nonlinearity"));
  s.initial = read_initial(r.child("initial"));
  std::string scheme = "ETD2RK";
  r.get("scheme", scheme);
  one_of(scheme, {"ETD1", "ETD2RK"}, r.at("scheme"));
  s.scheme = scheme_from_string(scheme);
  r.get("dt", s.dt);
  r.get("T", s.T);
  require(s.dt > 0.0, r.at("dt"), "must be positive");
  require(s.T > 0.0, r.at("T"), "must be positive");
  r.get("record_stride", s.record_stride);
  r.get("snapshot_stride", s.snapshot_stride);
  r.get("blowup_threshold", s.blowup_threshold);
  require(s.record_stride >= 1, r.at("record_stride"), "must be at least 1");
  for (const auto& d : r.list("diagnostics")) s.diagnostics.push_back(read_diagnostic(d));

  const Reader e = r.child("energy");
  e.allow({"enabled", "mu", "center", "ledger", "ledger_steps", "ledger_stride", "ledger_dt"});
  s.energy.enabled = r.has("energy");
  e.get("enabled", s.energy.enabled);
  e.get("mu", s.energy.mu);
  e.get("center", s.energy.center);
  e.get("ledger", s.energy.ledger);
  e.get("ledger_steps", s.energy.ledger_steps);
  e.get("ledger_stride", s.energy.ledger_stride);
  e.get("ledger_dt", s.energy.ledger_dt);
  require(s.energy.mu > 0.0, e.at("mu"), "must be positive");
  require(s.energy.ledger_steps >= 2, e.at("ledger_steps"), "must be at least 2");
  require(s.energy.ledger_stride >= 1, e.at("ledger_stride"), "must be at least 1");
  require(s.energy.ledger_dt >= 0.0, e.at("ledger_dt"), "must be nonnegative");
  const bool has_potential = s.nonlinearity.kind == "quadratic" || s.nonlinearity.kind == "double_well" ||
                             s.nonlinearity.kind == "corridor";
  require(!s.energy.enabled || has_potential, e.path(),
          "energy needs a gradient nonlinearity (quadratic, double_well or corridor)");

  const Reader l = r.child("longtime");
  l.allow({"enabled", "epsilon", "R1", "tolerance"});
  s.longtime.enabled = r.has("longtime");
  l.get("enabled", s.longtime.enabled);
  l.get("epsilon", s.longtime.epsilon);
  l.get("R1", s.longtime.R1);
  l.get("tolerance", s.longtime.tolerance);
  require(!s.longtime.enabled || has_potential, l.path(), "long-time experiment needs a gradient nonlinearity");

  const Reader gt = r.child("gates");
  gt.allow({"allow_blowup", "ledger_gap", "gronwall", "flat_energy_gap"});
  gt.get("allow_blowup", s.gates.allow_blowup);
  gt.get("ledger_gap", s.gates.ledger_gap);
  gt.get("gronwall", s.gates.gronwall);
  gt.get("flat_energy_gap", s.gates.flat_energy_gap);
  return s;
}

LabCfg read_lab(const Reader& r) {
  r.allow({"name", "generator", "norm", "ladder", "section_length", "t_min", "t_max", "t_count", "classifier",
           "density_gap", "min_jump", "max_jump", "block_spacing", "plateau", "blend", "cutoff_margin"});
  LabCfg b;
  r.get("name", b.name);
  require(!b.name.empty(), r.at("name"), "lab block needs a name");
  std::string gen = "chirp";
  r.get("generator", gen);
  one_of(gen, {"chirp", "mode_blocks", "smooth_control"}, r.at("generator"));
  b.generator.kind = pathology_from_string(gen);
  r.get("block_spacing", b.generator.block_spacing);
  r.get("plateau", b.generator.plateau);
  r.get("blend", b.generator.blend);
  r.get("cutoff_margin", b.generator.cutoff_margin);
  r.get("norm", b.norm);
  one_of(b.norm, {"linf", "ul"}, r.at("norm"));
  if (r.has("ladder")) {
    b.ladder.clear();
    for (const auto& rung : r.list("ladder")) {
      rung.allow({"L", "n_x", "modes"});
      LadderRung lr;
      rung.get("L", lr.L);
      rung.get("n_x", lr.n_x);
      rung.get("modes", lr.modes);
      require(lr.L >= 8.0, rung.at("L"), "half length must be at least 8");
      require(power_of_two(lr.n_x), rung.at("n_x"), "must be a power of two and at least 16");
      require(lr.modes >= 1, rung.at("modes"), "must be at least 1");
      b.ladder.push_back(lr);
    }
    require(!b.ladder.empty(), r.at("ladder"), "needs at least one rung");
  }
  r.get("section_length", b.section_length);
  r.get("t_min", b.t_min);
  r.get("t_max", b.t_max);
  r.get("t_count", b.t_count);
  require(b.t_min > 0.0 && b.t_max > b.t_min, r.at("t_max"), "need 0 < t_min < t_max");
  require(b.t_count >= 2, r.at("t_count"), "must be at least 2");
  r.get("classifier", b.classifier);
  if (r.has("density_gap")) {
    const Reader d = r.child("density_gap");
    d.allow({"R", "kappa_max", "max_mode", "constraint", "restarts", "iterations"});
    DensityGapCfg g;
    d.get("R", g.R);
    d.get("kappa_max", g.kappa_max);
    d.get("max_mode", g.max_mode);
    d.get("constraint", g.constraint);
    d.get("restarts", g.restarts);
    d.get("iterations", g.iterations);
    one_of(g.constraint, {"h1_ul", "db_ul"}, d.at("constraint"));
    require(g.R > 0.0, d.at("R"), "must be positive");
    require(g.restarts >= 1, d.at("restarts"), "must be at least 1");
    b.density_gap = g;
  }
  r.get("min_jump", b.min_jump);
  r.get("max_jump", b.max_jump);
  return b;
}

}  // namespace

Config parse_config(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  const Reader r(root, origin);
  r.allow({"output_dir", "seed", "threads", "scenarios", "lab"});
  Config c;
  r.get("output_dir", c.output_dir);
  r.get("seed", c.seed);
  r.get("threads", c.threads);
  require(c.threads >= 1, r.at("threads"), "must be at least 1");
  std::set<std::string> names;
  for (const auto& s : r.list("scenarios")) {
    c.scenarios.push_back(read_scenario(s));
    require(names.insert(c.scenarios.back().name).second, s.at("name"), "duplicate block name");
  }
  for (const auto& l : r.list("lab")) {
    c.lab.push_back(read_lab(l));
    require(names.insert(c.lab.back().name).second, l.at("name"), "duplicate block name");
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<std::string> preset_names() { return {"figure1", "figure2", "corridor", "advective", "gradientflow"}; }

Config preset_config(const std::string& name) {
  static const char* figure1 = R"(
lab:
  - name: figure1
    generator: chirp
    norm: linf
    classifier: true
    min_jump: 0.5
)";
  static const char* figure2 = R"(
lab:
  - name: figure2
    generator: mode_blocks
    norm: ul
    classifier: true
    min_jump: 0.3
  - name: figure2_control
    generator: smooth_control
    norm: ul
    classifier: true
    max_jump: 0.01
)";
  static const char* corridor = R"(
scenarios:
  - name: corridor
    grid: {L: 32, n_x: 512}
    transverse: {kind: dirichlet, modes: 12, length: 6, shift: 1}
    nonlinearity: {kind: corridor, k: 40, a: 0.25}
    initial: {generator: corridor, amplitude: 0.9, width: 4}
    scheme: ETD2RK
    dt: 0.005
    T: 10
    record_stride: 20
    snapshot_stride: 400
    diagnostics:
      - {name: h2_ul, norm: sobolev_ul, order: 2}
      - {name: db_ul, norm: ul, alpha: 1}
    energy: {mu: 0.1, center: 0, ledger: true, ledger_steps: 400, ledger_stride: 40, ledger_dt: 0.0001}
    longtime: {epsilon: 0.1, tolerance: 0.02}
    gates: {ledger_gap: 0.0001, gronwall: true}
)";
  static const char* advective = R"(
scenarios:
  - name: advective
    grid: {L: 16, n_x: 256}
    transverse: {kind: advective, modes: 8, length: 1, strength: 2, fd_points: 1024}
    initial: {generator: gaussian, amplitude: 1, width: 1}
    dt: 0.001
    T: 1
    record_stride: 10
    diagnostics:
      - {name: ul_l2, norm: ul}
      - {name: ul_db_half, norm: ul, alpha: 0.5}
)";
  static const char* gradientflow = R"(
scenarios:
  - name: gradientflow
    grid: {L: 16, n_x: 256}
    transverse: {kind: dirichlet, modes: 4, length: 2}
    nonlinearity: {kind: quadratic, kappa: 1}
    initial: {generator: random, amplitude: 1, max_index: 8}
    dt: 0.01
    T: 5
    record_stride: 5
    energy: {mu: 0.1, center: 0, ledger: true, ledger_steps: 200, ledger_stride: 20, ledger_dt: 0.0001}
    gates: {ledger_gap: 0.0001, gronwall: true}
)";
  const char* text = nullptr;
  if (name == "figure1") text = figure1;
  else if (name == "figure2") text = figure2;
  else if (name == "corridor") text = corridor;
  else if (name == "advective") text = advective;
  else if (name == "gradientflow") text = gradientflow;
  else {
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("preset: unknown name '" + name + "' (expected one of " + list + ")");
  }
  return parse_config(text, "preset " + name);
}

}  // namespace ulpar::cli
