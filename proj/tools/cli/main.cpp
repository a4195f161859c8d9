#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "checks.hpp"
#include "config.hpp"
#include "run.hpp"
#include "ulpar/norms.hpp"
#include "ulpar/snapshot.hpp"
#include "ulpar/transverse.hpp"

using namespace ulpar;

namespace {

struct RunArgs {
  std::string config;
  std::string preset;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
};

cli::Config resolve(const RunArgs& a) {
  if (a.config.empty() == a.preset.empty()) throw cli::ConfigError("exactly one of --config or --preset is required");
  cli::Config c = a.config.empty() ? cli::preset_config(a.preset) : cli::load_config(a.config);
  if (!a.out_dir.empty()) c.output_dir = a.out_dir;
  if (a.seed != 0) c.seed = a.seed;
  if (a.threads > 0) c.threads = a.threads;
  return c;
}

void add_run_flags(CLI::App* sub, RunArgs& a) {
  sub->add_option("--config", a.config, "YAML configuration file");
  sub->add_option("--preset", a.preset, "built-in configuration")->check(CLI::IsMember(cli::preset_names()));
  sub->add_option("--out-dir", a.out_dir, "output directory (overrides the config)");
  sub->add_option("--seed", a.seed, "random seed (overrides the config)");
  sub->add_option("--threads", a.threads, "worker threads for independent blocks")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ulpar: parabolic problems in uniformly local spaces on unbounded strips"};
  app.require_subcommand(1);

  RunArgs sim_args, lab_args;
  auto* sim = app.add_subcommand("simulate", "run the scenario blocks of a configuration");
  add_run_flags(sim, sim_args);
  auto* lab = app.add_subcommand("lab", "run the ill-posedness lab blocks of a configuration");
  add_run_flags(lab, lab_args);

  std::string suite;
  std::string fault;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("suite", suite, "fast, full or acceptance")
      ->required()
      ->check(CLI::IsMember({"fast", "full", "acceptance"}));
  verify->add_option("--seed", verify_seed, "random seed");
  verify->add_option("--inject-fault", fault)->check(CLI::IsMember({"ledger-sign"}))->group("");

  std::string snap_path;
  double p = 2.0, alpha = 0.0, length = 1.0;
  auto* norms = app.add_subcommand("norms", "norms of a snapshot file");
  norms->add_option("snapshot", snap_path, "snapshot file")->required()->check(CLI::ExistingFile);
  norms->add_option("--p", p, "integrability exponent (inf allowed)");
  norms->add_option("--alpha", alpha, "transverse power");
  norms->add_option("--length", length, "Dirichlet section length for alpha > 0");

  std::string kind = "dirichlet";
  std::size_t modes = 8;
  double sigma = 1.0, value = 1.0;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a transverse operator");
  spectrum->add_option("--kind", kind)->check(CLI::IsMember({"dirichlet", "fractional", "bounded_identity"}));
  spectrum->add_option("--modes", modes)->check(CLI::PositiveNumber);
  spectrum->add_option("--length", length)->check(CLI::PositiveNumber);
  spectrum->add_option("--sigma", sigma);
  spectrum->add_option("--value", value);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed() || lab->parsed()) {
      cli::Config c = resolve(sim->parsed() ? sim_args : lab_args);
      if (sim->parsed()) c.lab.clear();
      else c.scenarios.clear();
      return cli::run_config(c, std::cout);
    }
    if (verify->parsed()) {
      checks::CheckOptions opts;
      opts.seed = verify_seed;
      opts.ledger_fault = fault == "ledger-sign";
      bool ok = true;
      checks::run_suite(suite, opts, [&](const checks::CheckResult& r) {
        ok = ok && r.pass;
        std::printf("%s %-20s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
      });
      return ok ? 0 : 2;
    }
    if (norms->parsed()) {
      const Snapshot s = read_snapshot(snap_path);
      std::optional<TransverseOperator> B;
      if (alpha != 0.0) B = make_dirichlet_laplacian(s.field.modes(), length);
      const TransverseOperator* pb = B ? &*B : nullptr;
      const auto scan = ul_scan(s.field, p, alpha, pb);
      nlohmann::json j = {{"time", s.time},
                          {"p", p},
                          {"alpha", alpha},
                          {"flat", flat_norm(s.field, p, alpha, pb)},
                          {"ul", scan.value},
                          {"ul_window_center", s.field.grid().x(scan.argmax)}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (spectrum->parsed()) {
      TransverseOperator B = kind == "bounded_identity" ? make_bounded_identity(modes, length, value)
                                                        : make_dirichlet_laplacian(modes, length);
      if (kind == "fractional") B = make_fractional(B, sigma);
      for (std::size_t j = 0; j < B.modes(); ++j) std::printf("%zu %.17g\n", j + 1, B.eigenvalue(j));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
