#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace ulpar::cli {

struct BlockOutcome {
  std::string name;
  std::string kind;  // scenario or lab
  bool pass = true;
  bool error = false;
  std::string message;
  nlohmann::json summary;
};

BlockOutcome run_scenario(const ScenarioCfg& cfg, const std::string& out_dir, std::uint64_t seed);
BlockOutcome run_lab(const LabCfg& cfg, const std::string& out_dir, std::uint64_t seed);

// Runs every block and writes out_dir/summary.json. Returns 0, 2 on a failed gate, 1 on an error.
int run_config(const Config& cfg, std::ostream& log);

// Writes text to path through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace ulpar::cli
