#include "ulpar/operator.hpp"

#include <algorithm>
#include <cmath>

#include "ulpar/error.hpp"

namespace ulpar {
namespace {

std::vector<double> or_constant(const std::vector<double>& v, std::size_t n, double c, const char* name) {
  if (v.empty()) return std::vector<double>(n, c);
  if (v.size() != n) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must have one sample per grid node");
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, std::string(name) + " samples must be finite");
  return v;
}

Field scale_modes(const Field& u, const std::vector<double>& s) {
  std::vector<double> out = u.to_vector();
  const std::size_t M = u.modes();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= s[i % M];
  return Field(u.grid(), M, std::move(out));
}

}  // namespace

EvolutionOperator assemble(const Grid1D& grid, const TransverseOperator& B, const Coefficients& c,
                           const DeclaredBounds& bounds) {
  const std::size_t n = grid.size();
  EvolutionOperator op(grid, B);
  op.a_ = or_constant(c.a, n, 1.0, "diffusion coefficient");
  op.l1_ = or_constant(c.l1, n, 0.0, "l1");
  op.l2_ = or_constant(c.l2, n, 0.0, "l2");

  const double amin = *std::min_element(op.a_.begin(), op.a_.end());
  if (!(amin > 0.0))
    throw Error(ErrorCode::Ellipticity, "diffusion coefficient must stay positive, minimum is " + std::to_string(amin));

  double sum = 0.0;
  for (double v : op.a_) sum += v;
  op.abar_ = sum / static_cast<double>(n);
  op.dev_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    op.dev_[k] = op.a_[k] - op.abar_;
    op.max_dev_ = std::max(op.max_dev_, std::abs(op.dev_[k]));
  }
  op.has_dev_ = op.max_dev_ > 1e-14 * op.abar_;
  if (!op.has_dev_) std::fill(op.dev_.begin(), op.dev_.end(), 0.0), op.max_dev_ = 0.0;

  Field af(grid, 1, op.a_);
  Field da = derivative(af, 1);
  op.m_a_ = amin;
  op.M_a_ = 0.0;
  op.C_L_ = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    op.M_a_ = std::max(op.M_a_, op.a_[k] + std::abs(da(k, 0)));
    op.C_L_ = std::max(op.C_L_, std::abs(op.l1_[k]) + std::abs(op.l2_[k]));
    op.has_l1_ = op.has_l1_ || op.l1_[k] != 0.0;
    op.has_l2_ = op.has_l2_ || op.l2_[k] != 0.0;
  }
  op.perturbed_ = op.has_dev_ || op.has_l1_ || op.has_l2_;

  if (bounds.m_a && op.m_a_ < *bounds.m_a)
    throw Error(ErrorCode::Hypothesis, "lower ellipticity bound: min a = " + std::to_string(op.m_a_) +
                                           " is below the declared m_a = " + std::to_string(*bounds.m_a));
  if (bounds.M_a && op.M_a_ > *bounds.M_a)
    throw Error(ErrorCode::Hypothesis, "coefficient bound: max(a + |a'|) = " + std::to_string(op.M_a_) +
                                           " exceeds the declared M_a = " + std::to_string(*bounds.M_a));
  if (bounds.C_L && op.C_L_ > *bounds.C_L)
    throw Error(ErrorCode::Hypothesis, "lower-order bound: max(|l1| + |l2|) = " + std::to_string(op.C_L_) +
                                           " exceeds the declared C_L = " + std::to_string(*bounds.C_L));

  const std::size_t nc = grid.spectrum_size();
  const std::size_t M = B.modes();
  op.symbols_.resize(nc * M);
  op.smin_ = INFINITY;
  op.smax_ = 0.0;
  for (std::size_t m = 0; m < nc; ++m) {
    const double k = grid.wavenumber(m);
    for (std::size_t j = 0; j < M; ++j) {
      const double s = op.abar_ * k * k + B.eigenvalue(j);
      op.symbols_[m * M + j] = s;
      op.smin_ = std::min(op.smin_, s);
      op.smax_ = std::max(op.smax_, s);
    }
  }
  return op;
}

Field EvolutionOperator::multiply_rows(const std::vector<double>& c, const Field& u) const {
  std::vector<double> out = u.to_vector();
  const std::size_t M = u.modes();
  for (std::size_t k = 0; k < u.nx(); ++k)
    for (std::size_t j = 0; j < M; ++j) out[k * M + j] *= c[k];
  return Field(u.grid(), M, std::move(out));
}

Field EvolutionOperator::apply_A0(const Field& u) const {
  if (u.grid() != grid_ || u.modes() != modes())
    throw Error(ErrorCode::GridMismatch, "field does not match the operator grid");
  return apply_symbol(u, symbols_);
}

Field EvolutionOperator::apply_P(const Field& u) const {
  Field out(u.grid(), u.modes());
  if (!perturbed_) return out;
  Field du = derivative(u, 1);
  if (has_dev_) out = out - derivative(multiply_rows(dev_, du), 1);
  if (has_l1_) {
    std::vector<double> s(modes());
    for (std::size_t j = 0; j < modes(); ++j) s[j] = std::sqrt(B_.eigenvalue(j));
    out = out + multiply_rows(l1_, scale_modes(u, s));
  }
  if (has_l2_) out = out + multiply_rows(l2_, du);
  return out;
}

Field EvolutionOperator::apply(const Field& u) const {
  Field a0 = apply_A0(u);
  if (!perturbed_) return a0;
  return a0 + apply_P(u);
}

Field EvolutionOperator::apply_adjoint(const Field& u) const {
  Field out = apply_A0(u);
  if (!perturbed_) return out;
  if (has_dev_) out = out - derivative(multiply_rows(dev_, derivative(u, 1)), 1);
  if (has_l1_) {
    std::vector<double> s(modes());
    for (std::size_t j = 0; j < modes(); ++j) s[j] = std::sqrt(B_.eigenvalue(j));
    out = out + multiply_rows(l1_, scale_modes(u, s));
  }
  if (has_l2_) out = out - derivative(multiply_rows(l2_, u), 1);
  return out;
}

ComplexField EvolutionOperator::apply(const ComplexField& u) const { return {apply(u.re), apply(u.im)}; }

ComplexField EvolutionOperator::apply_adjoint(const ComplexField& u) const {
  return {apply_adjoint(u.re), apply_adjoint(u.im)};
}

}  // namespace ulpar
