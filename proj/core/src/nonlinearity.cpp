#include "ulpar/nonlinearity.hpp"

#include <cmath>

#include "ulpar/error.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar {

Nonlinearity Nonlinearity::zero() { return Nonlinearity(); }

Nonlinearity Nonlinearity::pointwise(Rule f, NonlinearityMeta meta, std::string name) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "pointwise rule is empty");
  if (meta.gamma < 0.0 || meta.alpha < 0.0 || meta.alpha >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "nonlinearity metadata out of range");
  Nonlinearity n;
  n.kind_ = NonlinearityKind::nemytskii_pointwise;
  n.meta_ = meta;
  n.name_ = std::move(name);
  n.rule_ = std::move(f);
  return n;
}

Nonlinearity Nonlinearity::mode_polynomial(std::vector<double> coeffs, NonlinearityMeta meta) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs coefficients");
  Nonlinearity n;
  n.kind_ = NonlinearityKind::mode_polynomial;
  n.coeffs_ = std::move(coeffs);
  int deg = 0;
  for (std::size_t p = 0; p < n.coeffs_.size(); ++p)
    if (n.coeffs_[p] != 0.0) deg = static_cast<int>(p);
  meta.degree = std::max(deg, 1);
  if (meta.gamma == 0.0 && deg > 1) meta.gamma = deg - 1;
  n.meta_ = meta;
  n.name_ = "mode_polynomial";
  return n;
}

std::size_t Nonlinearity::padded_size(std::size_t n) const noexcept {
  if (meta_.degree <= 1) return n;
  if (meta_.degree <= 3) return 3 * n / 2;
  return 2 * n;
}

Field Nonlinearity::apply(const Field& u, const TransverseOperator& B) const {
  if (kind_ == NonlinearityKind::zero) return Field(u.grid(), u.modes());
  if (B.modes() != u.modes()) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");
  const std::size_t M = u.modes();
  const std::size_t nf = padded_size(u.nx());
  std::vector<double> fine = nf == u.nx() ? u.to_vector() : pad_to(u, nf);
  std::vector<double> out(fine.size(), 0.0);

  if (kind_ == NonlinearityKind::mode_polynomial) {
    for (std::size_t i = 0; i < fine.size(); ++i) {
      double acc = 0.0;
      for (std::size_t p = coeffs_.size(); p-- > 0;) acc = acc * fine[i] + coeffs_[p];
      out[i] = acc;
    }
  } else {
    const auto& q = B.quadrature();
    const std::size_t Q = q.nodes.size();
    std::vector<double> vals(Q);
    for (std::size_t k = 0; k < nf; ++k) {
      const double* c = &fine[k * M];
      for (std::size_t i = 0; i < Q; ++i) {
        double s = 0.0;
        const double* e = &q.basis[i * M];
        for (std::size_t j = 0; j < M; ++j) s += c[j] * e[j];
        vals[i] = q.weights[i] * rule_(q.nodes[i], s);
      }
      double* o = &out[k * M];
      for (std::size_t i = 0; i < Q; ++i) {
        const double* e = &q.basis[i * M];
        for (std::size_t j = 0; j < M; ++j) o[j] += vals[i] * e[j];
      }
    }
  }
  for (double v : out)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "nonlinearity produced a non-finite value");
  if (nf == u.nx()) return Field(u.grid(), M, std::move(out));
  return truncate_from(out, nf, u);
}

}  // namespace ulpar
