#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulpar/lab.hpp"
#include "ulpar/stepper.hpp"

namespace ulpar::cli {

// Schema violation; the message starts with the offending key path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridCfg {
  double L = 16.0;
  std::size_t n_x = 256;
};

struct TransverseCfg {
  std::string kind = "dirichlet";  // dirichlet, fractional, bounded_identity, matrix_system, advective
  std::size_t modes = 4;
  double length = 1.0;
  double shift = 0.0;
  double sigma = 1.0;     // fractional power
  double value = 1.0;     // bounded_identity and matrix_system eigenvalue
  double strength = 2.0;  // advective potential amplitude
  std::size_t fd_points = 1024;
};

// a(x) = a_mean + a_amplitude cos(a_wavenumber x); l1 and l2 constant.
struct CoefficientCfg {
  double a_mean = 1.0;
  double a_amplitude = 0.0;
  double a_wavenumber = 1.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

struct NonlinearityCfg {
  std::string kind = "zero";  // zero, polynomial, sin, quadratic, double_well, corridor
  std::vector<double> coeffs;
  double lipschitz = 1.0;
  double kappa = 1.0;
  double k = 40.0;
  double a = 0.25;
};

struct InitialCfg {
  std::string generator = "gaussian";  // gaussian, plateau, random, corridor, chirp, mode_blocks, smooth_control, snapshot
  double amplitude = 1.0;
  double width = 1.0;
  std::size_t max_index = 8;
  std::optional<std::uint64_t> seed;
  std::string path;
};

struct DiagnosticCfg {
  std::string name;
  std::string norm = "ul";  // ul, flat, sobolev_ul, weighted, sup_weighted
  double p = 2.0;
  int order = 0;
  double alpha = 0.0;
  double mu = 1.0;
};

struct EnergyCfg {
  bool enabled = false;
  double mu = 0.1;
  double center = 0.0;
  bool ledger = false;
  std::size_t ledger_steps = 200;
  std::size_t ledger_stride = 20;
  double ledger_dt = 0.0;  // 0 uses the scenario dt
};

struct LongtimeCfg {
  bool enabled = false;
  double epsilon = 0.1;
  double R1 = 0.0;
  double tolerance = 0.02;
};

struct GateCfg {
  bool allow_blowup = false;
  std::optional<double> ledger_gap;
  bool gronwall = false;
  std::optional<double> flat_energy_gap;  // per-step increase relative to |E(0)|
};

struct ScenarioCfg {
  std::string name;
  GridCfg grid;
  TransverseCfg transverse;
  CoefficientCfg coefficients;
  NonlinearityCfg nonlinearity;
  InitialCfg initial;
  Scheme scheme = Scheme::ETD2RK;
  double dt = 1e-3;
  double T = 1.0;
  std::size_t record_stride = 10;
  std::size_t snapshot_stride = 0;
  double blowup_threshold = 0.0;
  std::vector<DiagnosticCfg> diagnostics;
  EnergyCfg energy;
  LongtimeCfg longtime;
  GateCfg gates;
};

struct DensityGapCfg {
  double R = 10.0;
  double kappa_max = 16.0;
  std::size_t max_mode = 0;
  std::string constraint = "h1_ul";
  std::size_t restarts = 20;
  std::size_t iterations = 200;
};

struct LabCfg {
  std::string name;
  PathologyGenerator generator;
  std::string norm = "linf";  // linf or ul
  std::vector<LadderRung> ladder = standard_ladder();
  double section_length = 2.0;
  double t_min = 1e-3;
  double t_max = 1e-1;
  int t_count = 9;
  bool classifier = true;
  std::optional<DensityGapCfg> density_gap;
  std::optional<double> min_jump;  // gate on the finest rung
  std::optional<double> max_jump;  // gate on every rung
};

struct Config {
  std::string output_dir = "ulpar_out";
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<ScenarioCfg> scenarios;
  std::vector<LabCfg> lab;
};

Config parse_config(const std::string& yaml_text, const std::string& origin = "config");
Config load_config(const std::string& path);

// Built-in configurations: figure1, figure2, corridor, advective, gradientflow.
std::vector<std::string> preset_names();
Config preset_config(const std::string& name);

}  // namespace ulpar::cli
