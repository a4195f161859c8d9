#pragma once

#include <limits>
#include <vector>

#include "ulpar/field.hpp"
#include "ulpar/transverse.hpp"
#include "ulpar/weight.hpp"

namespace ulpar {

enum class NormKind { flat, weighted, ul, ul_sup_weighted, sobolev_ul };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct NormSpec {
  NormKind kind = NormKind::ul;
  double p = 2.0;
  int order = 0;       // Sobolev order for sobolev_ul
  double alpha = 0.0;  // transverse power
  double mu = 1.0;
  std::vector<double> centers;  // weighted uses centers[0]; empty means x = 0
};

// |u(x_k)|_{D(B^alpha)} at every node.
std::vector<double> pointwise_norm(const Field& u, double alpha, const TransverseOperator* B);

double flat_norm(const Field& u, double p, double alpha = 0.0, const TransverseOperator* B = nullptr);

struct WindowScan {
  double value = 0.0;
  std::size_t argmax = 0;  // node index of the maximizing center
  std::vector<double> per_center;
};

// Window integrals (or maxima for p = inf) of |u|_{D(B^alpha)}^p centered at every node.
WindowScan ul_scan(const Field& u, double p, double alpha = 0.0, const TransverseOperator* B = nullptr);

double ul_norm(const Field& u, const NormSpec& spec, const TransverseOperator* B = nullptr);
double ul_norm(const Field& u, double p = 2.0, double alpha = 0.0, const TransverseOperator* B = nullptr);
double sobolev_ul_norm(const Field& u, int order, double p = 2.0, double alpha = 0.0,
                       const TransverseOperator* B = nullptr);

double weighted_norm(const Field& u, double p, const Weight& w, double alpha = 0.0,
                     const TransverseOperator* B = nullptr);

struct SupWeightedReport {
  double value = 0.0;
  double argmax_center = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// Equivalence constants c1, c2 with c1 |u|_ul <= sup_weighted <= c2 |u|_ul,
// valid for every field on this grid.
SupWeightedReport equivalence_constants(const Grid1D& g, double p, double mu,
                                        const std::vector<double>& centers);

SupWeightedReport sup_weighted_norm(const Field& u, double p, double mu,
                                    const std::vector<double>& centers, double alpha = 0.0,
                                    const TransverseOperator* B = nullptr);

// Grid nodes with spacing close to (and not above) `spacing`.
std::vector<double> lattice_centers(const Grid1D& g, double spacing = 0.5);

double norm(const Field& u, const NormSpec& spec, const TransverseOperator* B = nullptr);

struct ModulusCurve {
  std::vector<double> shifts;
  std::vector<double> values;
  double reference = 0.0;  // ul norm of u
  bool ul_s_candidate = false;
};

// |u - u(. - xi)|_ul for grid-commensurate shifts.
ModulusCurve translation_modulus(const Field& u, double p, const std::vector<double>& shifts,
                                 double tolerance = 0.1);

// D(B)-valued H^2 plus D(B) ul norm; and the H^1 plus D(B^1/2) variant.
double h2_db_ul_norm(const Field& u, const TransverseOperator& B);
double h1_db_half_ul_norm(const Field& u, const TransverseOperator& B);

}  // namespace ulpar
