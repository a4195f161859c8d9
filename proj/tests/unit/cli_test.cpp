#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "config.hpp"
#include "run.hpp"
#include "ulpar/snapshot.hpp"

using namespace ulpar;
using namespace ulpar::cli;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ulpar_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

const char* kHeat = R"(
scenarios:
  - name: heat
    grid: {L: 8, n_x: 64}
    transverse: {kind: dirichlet, modes: 2, length: 1}
    initial: {generator: random, amplitude: 0.5}
    dt: 0.01
    T: 0.2
    record_stride: 2
    snapshot_stride: 10
)";

}  // namespace

TEST(Config, ErrorsNameTheKeyPath) {
  const auto bad_dt = message_of("scenarios:\n  - name: a\n    dt: 0\n");
  EXPECT_NE(bad_dt.find("config.scenarios[0].dt"), std::string::npos) << bad_dt;
  const auto unknown = message_of("scenarios:\n  - name: a\n    grid: {L: 8, nx: 64}\n");
  EXPECT_NE(unknown.find("config.scenarios[0].grid"), std::string::npos) << unknown;
  EXPECT_NE(unknown.find("nx"), std::string::npos) << unknown;
  const auto kind = message_of("scenarios:\n  - name: a\n    transverse: {kind: laplace}\n");
  EXPECT_NE(kind.find("transverse.kind"), std::string::npos) << kind;
  EXPECT_NE(message_of("seed: banana\n"), "");
  EXPECT_NE(message_of("scenarios: 3\n"), "");
}

TEST(Config, DefaultsAndEmptyDocument) {
  const Config c = parse_config("{}");
  EXPECT_TRUE(c.scenarios.empty());
  EXPECT_TRUE(c.lab.empty());
  EXPECT_EQ(c.seed, 1u);
  const Config h = parse_config(kHeat);
  ASSERT_EQ(h.scenarios.size(), 1u);
  EXPECT_EQ(h.scenarios[0].grid.n_x, 64u);
  EXPECT_EQ(h.scenarios[0].dt, 0.01);
}

TEST(Config, PresetsParse) {
  ASSERT_FALSE(preset_names().empty());
  for (const auto& name : preset_names()) {
    const Config c = preset_config(name);
    EXPECT_FALSE(c.scenarios.empty() && c.lab.empty()) << name;
  }
  EXPECT_THROW(preset_config("nope"), ConfigError);
}

TEST(Config, MissingFileIsReported) {
  try {
    load_config("/nonexistent/ulpar.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/ulpar.yaml"), std::string::npos);
  }
}

TEST(Run, EmptyConfigSucceeds) {
  Config c;
  c.output_dir = fresh_dir("empty").string();
  std::ostringstream log;
  EXPECT_EQ(run_config(c, log), 0);
  EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / "summary.json"));
}

TEST(Run, SameSeedGivesIdenticalOutput) {
  std::string csv[2];
  for (int i = 0; i < 2; ++i) {
    Config c = parse_config(kHeat);
    c.seed = 11;
    c.output_dir = fresh_dir("replay" + std::to_string(i)).string();
    std::ostringstream log;
    ASSERT_EQ(run_config(c, log), 0) << log.str();
    csv[i] = slurp(fs::path(c.output_dir) / "heat" / "trajectory.csv");
  }
  EXPECT_FALSE(csv[0].empty());
  EXPECT_EQ(csv[0], csv[1]);
}

TEST(Run, SnapshotsRestartExactly) {
  Config c = parse_config(kHeat);
  c.output_dir = fresh_dir("snap").string();
  std::ostringstream log;
  ASSERT_EQ(run_config(c, log), 0) << log.str();
  const fs::path snaps = fs::path(c.output_dir) / "heat" / "snapshots";
  ASSERT_TRUE(fs::exists(snaps));
  fs::path last;
  for (const auto& e : fs::directory_iterator(snaps))
    if (last.empty() || e.path() > last) last = e.path();
  const Snapshot s = read_snapshot(last.string());
  EXPECT_NEAR(s.time, 0.2, 1e-12);
  EXPECT_EQ(s.field.modes(), 2u);

  // A run seeded from the saved state reproduces it at t = 0.
  Config r = parse_config(std::string(R"(
scenarios:
  - name: resume
    grid: {L: 8, n_x: 64}
    transverse: {kind: dirichlet, modes: 2, length: 1}
    initial: {generator: snapshot, path: ")") + last.string() + R"("}
    dt: 0.01
    T: 0.01
)");
  r.output_dir = fresh_dir("resume").string();
  ASSERT_EQ(run_config(r, log), 0) << log.str();
  fs::path first;
  for (const auto& e : fs::directory_iterator(fs::path(r.output_dir) / "resume" / "snapshots"))
    if (first.empty() || e.path() < first) first = e.path();
  const Snapshot t0 = read_snapshot(first.string());
  EXPECT_EQ(t0.field.data().size(), s.field.data().size());
  for (std::size_t i = 0; i < s.field.size(); ++i) EXPECT_EQ(t0.field.data()[i], s.field.data()[i]);
}

TEST(Run, SnapshotOnWrongGridIsAnError) {
  Config c = parse_config(kHeat);
  c.output_dir = fresh_dir("wrong_src").string();
  std::ostringstream log;
  ASSERT_EQ(run_config(c, log), 0);
  const fs::path snap = fs::path(c.output_dir) / "heat" / "snapshots" / "snap_0000.txt";
  ASSERT_TRUE(fs::exists(snap));
  Config r = parse_config(std::string(R"(
scenarios:
  - name: resume
    grid: {L: 8, n_x: 128}
    transverse: {kind: dirichlet, modes: 2, length: 1}
    initial: {generator: snapshot, path: ")") + snap.string() + R"("}
    dt: 0.01
    T: 0.01
)");
  r.output_dir = fresh_dir("wrong").string();
  EXPECT_EQ(run_config(r, log), 1);
}

TEST(Run, FailedGateExitsTwo) {
  // Cubic growth from large data blows up, which the default gate rejects.
  Config c = parse_config(R"(
scenarios:
  - name: burst
    grid: {L: 8, n_x: 64}
    transverse: {kind: dirichlet, modes: 1, length: 1}
    nonlinearity: {kind: polynomial, coeffs: [0, 0, 0, 1]}
    initial: {generator: plateau, amplitude: 20, width: 4}
    dt: 0.001
    T: 1
    blowup_threshold: 1.0e6
)");
  c.output_dir = fresh_dir("burst").string();
  std::ostringstream log;
  EXPECT_EQ(run_config(c, log), 2) << log.str();
  c.scenarios[0].gates.allow_blowup = true;
  EXPECT_EQ(run_config(c, log), 0) << log.str();
}

TEST(Run, WriteAtomicReplacesContent) {
  const fs::path dir = fresh_dir("atomic");
  fs::create_directories(dir);
  const std::string p = (dir / "x.txt").string();
  write_atomic(p, "one");
  write_atomic(p, "two");
  EXPECT_EQ(slurp(p), "two");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
}
