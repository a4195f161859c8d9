#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ulpar {

enum class TransverseKind { dirichlet_laplacian, fractional, bounded_identity, matrix_system, advective };

const char* to_string(TransverseKind kind);

inline constexpr double kLambdaFloor = 1e-12;

// Positive self-adjoint B on the cross-section, kept as its lowest M
// eigenpairs plus a quadrature rule on which the eigenfunctions are sampled.
class TransverseOperator {
 public:
  struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> basis;  // basis[q * M + j] = e_j(y_q)
  };

  TransverseOperator(TransverseKind kind, double section_length, std::vector<double> eigenvalues,
                     Quadrature quad, bool compact_resolvent);

  TransverseKind kind() const noexcept { return kind_; }
  std::size_t modes() const noexcept { return eigenvalues_.size(); }
  double section_length() const noexcept { return section_length_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t j) const noexcept { return eigenvalues_[j]; }
  bool compact_resolvent() const noexcept { return compact_resolvent_; }
  const Quadrature& quadrature() const noexcept { return quad_; }
  std::size_t quadrature_size() const noexcept { return quad_.nodes.size(); }

  const std::map<std::string, double>& params() const noexcept { return params_; }
  void set_param(const std::string& key, double value) { params_[key] = value; }

  // (lambda_j^alpha v_j), with 0^0 = 1.
  std::vector<double> apply_power(double alpha, std::span<const double> v) const;
  // l2 norm of (max(lambda_j, floor)^alpha v_j).
  double power_norm(double alpha, std::span<const double> v) const;
  // max(lambda_j, floor)^alpha
  double floored_power(std::size_t j, double alpha) const;

  // e_j(y); mode index j is zero based.
  double eigenfunction(std::size_t j, double y) const;

  // B + s id.
  TransverseOperator shifted(double s) const;

  void write_manifest(std::ostream& os) const;

 private:
  TransverseKind kind_;
  double section_length_;
  std::vector<double> eigenvalues_;
  Quadrature quad_;
  bool compact_resolvent_;
  std::map<std::string, double> params_;
};

TransverseOperator make_dirichlet_laplacian(std::size_t modes, double section_length);
TransverseOperator make_fractional(const TransverseOperator& base, double sigma);
TransverseOperator make_bounded_identity(std::size_t modes, double section_length, double value = 1.0);
TransverseOperator make_matrix_system(std::size_t k, double value = 1.0);

// B u = -u'' - W' u' = -exp(-W) (exp(W) u')' with Dirichlet ends, self-adjoint
// in the exp(W)-weighted inner product. W is sampled uniformly on [0, l]
// including both endpoints.
TransverseOperator make_advective(std::size_t modes, double section_length,
                                  const std::vector<double>& potential_samples,
                                  std::size_t fd_points = 1024);

}  // namespace ulpar
