#pragma once

#include <iosfwd>
#include <vector>

#include "ulpar/potential.hpp"
#include "ulpar/stepper.hpp"

namespace ulpar {

struct EnergySpec {
  bool flat = false;
  double mu = 0.1;
  double center = 0.0;
  bool gradient_term = true;
  bool b_half_term = true;
  bool u2_term = true;
  bool potential_term = true;
  // Mutation hook: flips the sign of the weight/time cross term in the ledger.
  bool ledger_fault = false;

  static EnergySpec truncated(double mu, double center);
  // Flat weight without the |u|^2 term.
  static EnergySpec formal_flat();
};

// Weight samples for these settings (all ones when flat).
std::vector<double> energy_weight(const Grid1D& g, const EnergySpec& spec);
std::vector<double> energy_weight_derivative(const Grid1D& g, const EnergySpec& spec);

// Pointwise energy integrand at each node.
std::vector<double> energy_density(const Field& u, const Potential* V, const TransverseOperator& B,
                                   const EnergySpec& spec);

double truncated_energy(const Field& u, const Potential* V, const TransverseOperator& B, const EnergySpec& spec);

// max over centers of the weighted energy, and the maximizing center.
struct SlidingEnergy {
  double value = 0.0;
  double center = 0.0;
};
SlidingEnergy sliding_energy(const Field& u, const Potential* V, const TransverseOperator& B, double mu,
                             const std::vector<double>& centers);

struct LedgerTerms {
  double dissipation = 0.0;     // -int rho |u_t|^2
  double weight_time = 0.0;     // -int <u_x, rho_x u_t>
  double gradient = 0.0;        // -int rho |u_x|^2
  double b_half = 0.0;          // -int rho |B^1/2 u|^2
  double weight_state = 0.0;    // -int <u_x, rho_x u>
  double potential = 0.0;       // -int rho <u, grad V(u)>
  double total = 0.0;
};

// Terms of dE/dt along u_t = u_xx - B u - grad V(u).
LedgerTerms dissipation_ledger(const Field& u, const Field& ut, const Potential& V, const TransverseOperator& B,
                               const EnergySpec& spec);

struct LedgerRow {
  double t = 0.0;
  double energy = 0.0;
  LedgerTerms terms;
  double centered = 0.0;  // (E(t + dt) - E(t - dt)) / (2 dt)
};

// Steps from u0 and evaluates the ledger at every `stride`-th interior step.
std::vector<LedgerRow> ledger_along(const Stepper& stepper, const Potential& V, const TransverseOperator& B,
                                    const EnergySpec& spec, const Field& u0, std::size_t steps, std::size_t stride);

void write_ledger_csv(std::ostream& os, const std::vector<LedgerRow>& rows);

// E >= int rho (V(0) - delta_Y^2 / (2 (kappa + 1))) from the coercivity data.
double energy_floor(const Grid1D& g, const Potential& V, const TransverseOperator& B, const EnergySpec& spec);

struct GronwallReport {
  bool pass = false;
  double nu = 0.0;
  double worst_gap = 0.0;  // max of E_i - bound_i
  std::size_t worst_index = 0;
};

GronwallReport gronwall_audit(const std::vector<double>& t, const std::vector<double>& E, double nu);
// Largest nu in [nu_lo, nu_hi] passing the audit, by 40 geometric bisection steps; 0 if none.
double gronwall_max_nu(const std::vector<double>& t, const std::vector<double>& E, double nu_lo = 1e-8,
                       double nu_hi = 1e4);

struct CoercivityReport {
  bool declared_pass = false;
  double worst_margin = 0.0;
  double kappa_fit = 0.0;
  double delta_fit = 0.0;
  bool fit_pass = false;
};

CoercivityReport coercivity_check(const Potential& V, const std::vector<double>& ys,
                                  const std::vector<double>& amplitudes);

}  // namespace ulpar
