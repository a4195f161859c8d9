#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ulpar/field.hpp"
#include "ulpar/spectral.hpp"
#include "ulpar/transverse.hpp"

namespace ulpar {

// Samples of the x-dependent coefficients on the grid nodes. An empty vector
// means a = 1 or l = 0 respectively.
struct Coefficients {
  std::vector<double> a;
  std::vector<double> l1;  // multiplies B^{1/2} u
  std::vector<double> l2;  // multiplies d/dx u
};

// Optional declared constants that the assembled coefficients must respect.
struct DeclaredBounds {
  std::optional<double> m_a;
  std::optional<double> M_a;
  std::optional<double> C_L;
};

// The positive operator A = -d/dx(a d/dx) + B + l1 B^{1/2} + l2 d/dx, split as
// A0 = -abar d2/dx2 + B (diagonal in Fourier x mode space) plus P = A - A0.
// Semigroups are always exp(-A t).
class EvolutionOperator {
 public:
  const Grid1D& grid() const noexcept { return grid_; }
  const TransverseOperator& transverse() const noexcept { return B_; }
  std::size_t modes() const noexcept { return B_.modes(); }

  double a_mean() const noexcept { return abar_; }
  double m_a() const noexcept { return m_a_; }
  double M_a() const noexcept { return M_a_; }
  double C_L() const noexcept { return C_L_; }
  double max_a_deviation() const noexcept { return max_dev_; }
  bool perturbed() const noexcept { return perturbed_; }

  // S[m * M + j] = abar kappa_m^2 + lambda_j on the half spectrum.
  const std::vector<double>& symbols() const noexcept { return symbols_; }
  double symbol_min() const noexcept { return smin_; }
  double symbol_max() const noexcept { return smax_; }

  Field apply(const Field& u) const;
  Field apply_A0(const Field& u) const;
  Field apply_P(const Field& u) const;
  Field apply_adjoint(const Field& u) const;
  ComplexField apply(const ComplexField& u) const;
  ComplexField apply_adjoint(const ComplexField& u) const;

  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& l1() const noexcept { return l1_; }
  const std::vector<double>& l2() const noexcept { return l2_; }

  // Multiplier table f(S) on the half spectrum.
  template <class F>
  std::vector<double> symbol_table(F&& f) const {
    std::vector<double> t(symbols_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(symbols_[i]);
    return t;
  }

  friend EvolutionOperator assemble(const Grid1D&, const TransverseOperator&, const Coefficients&,
                                    const DeclaredBounds&);

 private:
  EvolutionOperator(const Grid1D& g, const TransverseOperator& B) : grid_(g), B_(B) {}

  Field multiply_rows(const std::vector<double>& c, const Field& u) const;

  Grid1D grid_;
  TransverseOperator B_;
  std::vector<double> a_, dev_, l1_, l2_;
  double abar_ = 1.0, m_a_ = 1.0, M_a_ = 1.0, C_L_ = 0.0, max_dev_ = 0.0;
  bool perturbed_ = false;
  bool has_dev_ = false, has_l1_ = false, has_l2_ = false;
  std::vector<double> symbols_;
  double smin_ = 0.0, smax_ = 0.0;
};

EvolutionOperator assemble(const Grid1D& grid, const TransverseOperator& B, const Coefficients& coeffs = {},
                           const DeclaredBounds& bounds = {});

}  // namespace ulpar
