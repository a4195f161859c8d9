#include "ulpar/transverse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "ulpar/error.hpp"

namespace ulpar {
namespace {

// Trapezoid rule on Q + 1 equal cells of [0, l] with Q = 2M interior nodes. Exact for
// products of sines up to the needed degree; the endpoint nodes, where every mode
// vanishes, carry V(y, 0) so constants integrate to l.
TransverseOperator::Quadrature sine_quadrature(std::size_t M, double ell) {
  const std::size_t Q = 2 * M;
  const double h = ell / static_cast<double>(Q + 1);
  TransverseOperator::Quadrature q;
  q.nodes.resize(Q + 2);
  q.weights.assign(Q + 2, h);
  q.weights.front() = q.weights.back() = 0.5 * h;
  q.basis.assign((Q + 2) * M, 0.0);
  const double amp = std::sqrt(2.0 / ell);
  for (std::size_t i = 0; i < Q + 2; ++i) {
    q.nodes[i] = static_cast<double>(i) * h;
    if (i == 0 || i == Q + 1) continue;
    for (std::size_t j = 0; j < M; ++j)
      q.basis[i * M + j] = amp * std::sin(static_cast<double>(j + 1) * std::numbers::pi * q.nodes[i] / ell);
  }
  q.nodes.back() = ell;
  return q;
}

void check_modes(std::size_t M) {
  if (M == 0) throw Error(ErrorCode::InvalidArgument, "mode count must be at least 1");
}

void check_length(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(ErrorCode::InvalidArgument, "section length must be positive");
}

double interpolate(const std::vector<double>& samples, double ell, double y) {
  const double t = std::clamp(y / ell, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(t), samples.size() - 2);
  const double f = t - static_cast<double>(i);
  return (1.0 - f) * samples[i] + f * samples[i + 1];
}

}  // namespace

const char* to_string(TransverseKind kind) {
  switch (kind) {
    case TransverseKind::dirichlet_laplacian: return "dirichlet_laplacian";
    case TransverseKind::fractional: return "fractional";
    case TransverseKind::bounded_identity: return "bounded_identity";
    case TransverseKind::matrix_system: return "matrix_system";
    case TransverseKind::advective: return "advective";
  }
  return "unknown";
}

TransverseOperator::TransverseOperator(TransverseKind kind, double section_length, std::vector<double> eigenvalues,
                                       Quadrature quad, bool compact_resolvent)
    : kind_(kind),
      section_length_(section_length),
      eigenvalues_(std::move(eigenvalues)),
      quad_(std::move(quad)),
      compact_resolvent_(compact_resolvent) {
  check_modes(eigenvalues_.size());
  for (std::size_t j = 0; j < eigenvalues_.size(); ++j) {
    if (!(eigenvalues_[j] >= 0.0) || !std::isfinite(eigenvalues_[j]))
      throw Error(ErrorCode::Construction, "eigenvalues must be finite and nonnegative");
    if (j > 0 && eigenvalues_[j] < eigenvalues_[j - 1])
      throw Error(ErrorCode::Construction, "eigenvalues must be nondecreasing");
  }
  if (quad_.weights.size() != quad_.nodes.size() || quad_.basis.size() != quad_.nodes.size() * eigenvalues_.size())
    throw Error(ErrorCode::Construction, "quadrature tables are inconsistent");
}

double TransverseOperator::floored_power(std::size_t j, double alpha) const {
  if (alpha == 0.0) return 1.0;
  return std::pow(std::max(eigenvalues_[j], kLambdaFloor), alpha);
}

std::vector<double> TransverseOperator::apply_power(double alpha, std::span<const double> v) const {
  if (v.size() != modes()) throw Error(ErrorCode::InvalidArgument, "mode vector length differs from M");
  if (alpha < 0.0) throw Error(ErrorCode::InvalidArgument, "power must be nonnegative");
  std::vector<double> out(v.begin(), v.end());
  if (alpha == 0.0) return out;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= std::pow(eigenvalues_[j], alpha);
  return out;
}

double TransverseOperator::power_norm(double alpha, std::span<const double> v) const {
  if (v.size() != modes()) throw Error(ErrorCode::InvalidArgument, "mode vector length differs from M");
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double w = floored_power(j, alpha) * v[j];
    s += w * w;
  }
  return std::sqrt(s);
}

double TransverseOperator::eigenfunction(std::size_t j, double y) const {
  if (j >= modes()) throw Error(ErrorCode::InvalidArgument, "mode index out of range");
  if (kind_ == TransverseKind::matrix_system) return std::abs(y - static_cast<double>(j)) < 0.5 ? 1.0 : 0.0;
  if (params_.count("fd_points")) {
    std::vector<double> samples(quad_.nodes.size() + 2, 0.0);
    for (std::size_t i = 0; i < quad_.nodes.size(); ++i) samples[i + 1] = quad_.basis[i * modes() + j];
    return interpolate(samples, section_length_, y);
  }
  return std::sqrt(2.0 / section_length_) *
         std::sin(static_cast<double>(j + 1) * std::numbers::pi * y / section_length_);
}

TransverseOperator TransverseOperator::shifted(double s) const {
  std::vector<double> ev = eigenvalues_;
  for (double& v : ev) v += s;
  TransverseOperator out(kind_, section_length_, std::move(ev), quad_, compact_resolvent_);
  out.params_ = params_;
  out.params_["shift"] += s;
  return out;
}

void TransverseOperator::write_manifest(std::ostream& os) const {
  char buf[40];
  auto g17 = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "kind " << to_string(kind_) << '\n';
  os << "M " << modes() << '\n';
  os << "section_length " << g17(section_length_) << '\n';
  os << "compact_resolvent " << (compact_resolvent_ ? 1 : 0) << '\n';
  for (const auto& [k, v] : params_) os << "param " << k << ' ' << g17(v) << '\n';
  os << "eigenvalues\n";
  for (std::size_t j = 0; j < modes(); ++j) os << j + 1 << ' ' << g17(eigenvalues_[j]) << '\n';
}

TransverseOperator make_dirichlet_laplacian(std::size_t M, double ell) {
  check_modes(M);
  check_length(ell);
  std::vector<double> ev(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double k = static_cast<double>(j + 1) * std::numbers::pi / ell;
    ev[j] = k * k;
  }
  return TransverseOperator(TransverseKind::dirichlet_laplacian, ell, std::move(ev), sine_quadrature(M, ell), true);
}

TransverseOperator make_fractional(const TransverseOperator& base, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  std::vector<double> ev = base.eigenvalues();
  for (double& v : ev) v = std::pow(v, sigma / 2.0);
  TransverseOperator out(TransverseKind::fractional, base.section_length(), std::move(ev), base.quadrature(),
                         base.compact_resolvent());
  for (const auto& [k, v] : base.params()) out.set_param(k, v);
  out.set_param("sigma", sigma);
  return out;
}

TransverseOperator make_bounded_identity(std::size_t M, double ell, double value) {
  check_modes(M);
  check_length(ell);
  if (!(value >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bounded operator value must be nonnegative");
  TransverseOperator out(TransverseKind::bounded_identity, ell, std::vector<double>(M, value), sine_quadrature(M, ell),
                         false);
  out.set_param("value", value);
  return out;
}

TransverseOperator make_matrix_system(std::size_t k, double value) {
  check_modes(k);
  if (!(value >= 0.0)) throw Error(ErrorCode::InvalidArgument, "system value must be nonnegative");
  TransverseOperator::Quadrature q;
  q.nodes.resize(k);
  q.weights.assign(k, 1.0);
  q.basis.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    q.nodes[i] = static_cast<double>(i);
    q.basis[i * k + i] = 1.0;
  }
  TransverseOperator out(TransverseKind::matrix_system, static_cast<double>(k), std::vector<double>(k, value),
                         std::move(q), false);
  out.set_param("value", value);
  return out;
}

TransverseOperator make_advective(std::size_t M, double ell, const std::vector<double>& W, std::size_t fd_points) {
  check_modes(M);
  check_length(ell);
  if (W.size() < 2) throw Error(ErrorCode::InvalidArgument, "potential needs at least two samples");
  if (fd_points < 2 * M + 2) throw Error(ErrorCode::InvalidArgument, "too few finite-difference points");
  for (double v : W)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "potential samples must be finite");

  const std::size_t n = fd_points;
  const double h = ell / static_cast<double>(n + 1);
  std::vector<double> w(n), whalf(n + 1);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(interpolate(W, ell, static_cast<double>(i + 1) * h));
  for (std::size_t i = 0; i <= n; ++i) whalf[i] = std::exp(interpolate(W, ell, (static_cast<double>(i) + 0.5) * h));

  // Flux form: (B u)_i = -(1/(h^2 w_i)) [w_{i+1/2}(u_{i+1}-u_i) - w_{i-1/2}(u_i-u_{i-1})].
  const double h2 = h * h;
  Eigen::VectorXd diag(n), sub(n - 1);
  double scale = 0.0, asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = (whalf[i] + whalf[i + 1]) / (h2 * w[i]);
    scale = std::max(scale, std::abs(diag[i]));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double b_up = -whalf[i + 1] / (h2 * w[i]);
    const double b_lo = -whalf[i + 1] / (h2 * w[i + 1]);
    const double s_up = std::sqrt(w[i]) * b_up / std::sqrt(w[i + 1]);
    const double s_lo = std::sqrt(w[i + 1]) * b_lo / std::sqrt(w[i]);
    asym = std::max(asym, std::abs(s_up - s_lo));
    sub[i] = 0.5 * (s_up + s_lo);
  }
  if (asym > 1e-10 * scale)
    throw Error(ErrorCode::Construction, "symmetrized advective operator has residual asymmetry " + std::to_string(asym));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::Construction, "tridiagonal eigensolve failed");
  const Eigen::VectorXd& lam = es.eigenvalues();

  // Eigenvectors by inverse iteration with the Thomas algorithm.
  std::vector<double> ev(M);
  TransverseOperator::Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  q.basis.assign(n * M, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    q.nodes[i] = static_cast<double>(i + 1) * h;
    q.weights[i] = h * w[i];
  }
  std::vector<Eigen::VectorXd> found;
  for (std::size_t j = 0; j < M; ++j) {
    ev[j] = lam[static_cast<Eigen::Index>(j)];
    const double gap = (j + 1 < static_cast<std::size_t>(lam.size()))
                           ? lam[static_cast<Eigen::Index>(j + 1)] - ev[j]
                           : std::abs(ev[j]);
    const double shift = ev[j] - 1e-6 * std::max(gap, 1e-300);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] += 1e-3 * std::sin(0.37 * static_cast<double>(i));
    for (int it = 0; it < 4; ++it) {
      Eigen::VectorXd c(n), d(n);
      Eigen::VectorXd a = diag.array() - shift;
      c[0] = (n > 1 ? sub[0] : 0.0) / a[0];
      d[0] = x[0] / a[0];
      for (std::size_t i = 1; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double m = a[ii] - sub[ii - 1] * c[ii - 1];
        c[ii] = (i + 1 < n) ? sub[ii] / m : 0.0;
        d[ii] = (x[ii] - sub[ii - 1] * d[ii - 1]) / m;
      }
      Eigen::VectorXd y(n);
      y[static_cast<Eigen::Index>(n - 1)] = d[static_cast<Eigen::Index>(n - 1)];
      for (std::size_t i = n - 1; i-- > 0;) {
        const auto ii = static_cast<Eigen::Index>(i);
        y[ii] = d[ii] - c[ii] * y[ii + 1];
      }
      for (const auto& v : found) y -= v.dot(y) * v;
      x = y / y.norm();
    }
    if (x[0] < 0.0) x = -x;
    found.push_back(x);
    for (std::size_t i = 0; i < n; ++i)
      q.basis[i * M + j] = x[static_cast<Eigen::Index>(i)] / std::sqrt(h * w[i]);
  }
  for (std::size_t j = 1; j < M; ++j) ev[j] = std::max(ev[j], ev[j - 1]);
  if (ev[0] < 0.0) throw Error(ErrorCode::Construction, "advective operator has a negative eigenvalue");
  TransverseOperator out(TransverseKind::advective, ell, std::move(ev), std::move(q), true);
  out.set_param("fd_points", static_cast<double>(n));
  return out;
}

}  // namespace ulpar
