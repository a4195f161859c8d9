#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ulpar/field.hpp"
#include "ulpar/transverse.hpp"

namespace ulpar {

enum class NonlinearityKind { zero, nemytskii_pointwise, mode_polynomial };

// Growth data: F maps bounded sets of D(B^alpha) with |F(u) - F(v)| <= C (1 + |u|^gamma + |v|^gamma) |u - v|.
// gamma = 0 means globally Lipschitz with constant C. degree > 0 marks a
// polynomial nonlinearity of that degree (used for dealiasing).
struct NonlinearityMeta {
  double alpha = 0.0;
  double gamma = 0.0;
  double constant = 1.0;
  int degree = 0;
};

class Nonlinearity {
 public:
  using Rule = std::function<double(double y, double u)>;

  static Nonlinearity zero();
  // f(y, u) applied pointwise on the transverse quadrature grid.
  static Nonlinearity pointwise(Rule f, NonlinearityMeta meta, std::string name = "pointwise");
  // F(c)_j = sum_p coeffs[p] c_j^p, acting on mode coefficients.
  static Nonlinearity mode_polynomial(std::vector<double> coeffs, NonlinearityMeta meta = {});

  NonlinearityKind kind() const noexcept { return kind_; }
  const NonlinearityMeta& meta() const noexcept { return meta_; }
  const std::string& name() const noexcept { return name_; }
  bool is_zero() const noexcept { return kind_ == NonlinearityKind::zero; }

  // Padded x-grid size used to evaluate F on a grid of n nodes.
  std::size_t padded_size(std::size_t n) const noexcept;

  Field apply(const Field& u, const TransverseOperator& B) const;

 private:
  Nonlinearity() = default;

  NonlinearityKind kind_ = NonlinearityKind::zero;
  NonlinearityMeta meta_;
  std::string name_ = "zero";
  Rule rule_;
  std::vector<double> coeffs_;
};

}  // namespace ulpar
