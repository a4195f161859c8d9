#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ulpar/norms.hpp"
#include "ulpar/operator.hpp"

namespace ulpar {

enum class PathologyKind { chirp, mode_blocks, smooth_control };

const char* to_string(PathologyKind k);
PathologyKind pathology_from_string(const std::string& s);

struct PathologyGenerator {
  PathologyKind kind = PathologyKind::chirp;
  // chirp: sin(x^2) e_1 times a cutoff equal to 1 on [-L + margin, L - margin]
  double cutoff_margin = 4.0;
  double cutoff_ramp = 2.0;
  // mode_blocks: unit plateaus carrying e_n on block n, spaced block_spacing apart
  double block_spacing = 8.0;
  double plateau = 1.0;
  double blend = 0.5;
  std::size_t blocks = 0;  // 0 fills the domain
  // smooth_control: cos(kappa x) e_1 with kappa the grid wavenumber nearest this value
  double control_wavenumber = 1.0;
};

std::size_t block_count(const PathologyGenerator& gen, const Grid1D& g);

// Generated fields are normalized to unit L2 ul norm.
Field generate(const PathologyGenerator& gen, const Grid1D& g, const TransverseOperator& B);

std::vector<double> default_jump_grid();

struct JumpResult {
  double infimum = 0.0;
  double argmin_t = 0.0;
  std::vector<double> t;
  std::vector<double> distance;
  double continuity_exponent = 0.0;  // slope of log distance against log t over the first decade
};

// Distance |e^{-At} u0 - u0| over the grid for unperturbed operators.
JumpResult jump_measure(const EvolutionOperator& op, const Field& u0, const std::vector<double>& t_grid,
                        const NormSpec& spec);

// (1 - e^{-lambda_j t}) times the ul norm of the j-th mode component: a lower bound
// for the L2 ul distance of mode_blocks data.
double mode_block_bound(const EvolutionOperator& op, const Field& u0, std::size_t j, double t);

struct LadderRung {
  double L = 20.0;
  std::size_t n_x = 4096;
  std::size_t modes = 16;
};

std::vector<LadderRung> standard_ladder();

struct LadderEntry {
  LadderRung rung;
  JumpResult jump;
  double block_bound = 0.0;  // mode_blocks only, at the minimizing time
};

struct LadderReport {
  PathologyKind kind = PathologyKind::chirp;
  std::vector<LadderEntry> entries;
  bool nondecreasing = false;
};

// Jump measure on each rung with a Dirichlet section of the given length.
LadderReport refinement_study(const PathologyGenerator& gen, const NormSpec& spec,
                              const std::vector<LadderRung>& ladder, double section_length = 2.0,
                              const std::vector<double>& t_grid = default_jump_grid());

struct Classification {
  bool ul_s_candidate = false;
  ModulusCurve curve;
};

// Translation modulus at shifts dx * 2^k up to 1; empty shifts selects these.
Classification strong_vs_weak_classifier(const Field& u, std::vector<double> shifts = {});

enum class CorpusConstraint { h1_ul, db_ul };

struct Corpus {
  double kappa_max = 16.0;     // x-wavenumber band
  std::size_t max_mode = 0;    // transverse modes kept; 0 keeps all
  double R = 10.0;
  CorpusConstraint constraint = CorpusConstraint::h1_ul;
};

struct DensityGapReport {
  double best = 0.0;
  std::size_t best_restart = 0;
  std::vector<double> per_restart;
  double spread = 0.0;  // max minus min over restarts
};

// Projected gradient descent on a soft-max surrogate of |u - v|_ul over the corpus.
DensityGapReport density_gap(const Field& u, const TransverseOperator& B, const Corpus& corpus,
                             std::size_t restarts = 20, std::size_t iterations = 200, std::uint64_t seed = 1);

}  // namespace ulpar
