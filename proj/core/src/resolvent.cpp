#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "ulpar/error.hpp"
#include "ulpar/semigroup.hpp"

namespace ulpar {
namespace {

using Vec = Eigen::VectorXcd;

Vec to_vec(const ComplexField& f) {
  Vec v(static_cast<Eigen::Index>(f.re.size()));
  auto r = f.re.data();
  auto i = f.im.data();
  for (std::size_t k = 0; k < f.re.size(); ++k) v[static_cast<Eigen::Index>(k)] = cplx(r[k], i[k]);
  return v;
}

ComplexField from_vec(const Vec& v, const Grid1D& g, std::size_t M) {
  std::vector<double> r(static_cast<std::size_t>(v.size())), i(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = v[static_cast<Eigen::Index>(k)].real();
    i[k] = v[static_cast<Eigen::Index>(k)].imag();
  }
  return {Field(g, M, std::move(r)), Field(g, M, std::move(i))};
}

std::vector<cplx> diagonal_inverse(const EvolutionOperator& op, cplx z) {
  const auto& S = op.symbols();
  std::vector<cplx> inv(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    const cplx d = z + S[i];
    if (std::abs(d) <= 1e-14 * (1.0 + std::abs(S[i])))
      throw Error(ErrorCode::NearSpectrum, "resolvent point coincides with a symbol of the constant part");
    inv[i] = 1.0 / d;
  }
  return inv;
}

ComplexField perturbation(const EvolutionOperator& op, const ComplexField& w, bool adjoint) {
  if (adjoint) {
    ComplexField full = op.apply_adjoint(w);
    return {full.re - op.apply_A0(w.re), full.im - op.apply_A0(w.im)};
  }
  return {op.apply_P(w.re), op.apply_P(w.im)};
}

}  // namespace

ComplexField resolvent_apply(const EvolutionOperator& op, cplx z, const ComplexField& u, bool adjoint,
                             const ResolventOptions& opts, ResolventStats* stats) {
  if (u.re.grid() != op.grid() || u.re.modes() != op.modes())
    throw Error(ErrorCode::GridMismatch, "field does not match the operator grid");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::InvalidArgument, "resolvent point must be finite");
  const cplx zz = adjoint ? std::conj(z) : z;
  const std::vector<cplx> inv = diagonal_inverse(op, zz);
  if (!op.perturbed()) {
    if (stats) *stats = ResolventStats{0, 0.0};
    return apply_symbol(u, inv);
  }

  const Grid1D& g = op.grid();
  const std::size_t M = op.modes();
  auto precond = [&](const Vec& v) { return to_vec(apply_symbol(from_vec(v, g, M), inv)); };
  // K = (z + A) (z + A0)^{-1} = I + P (z + A0)^{-1}
  auto K = [&](const Vec& v) {
    ComplexField w = apply_symbol(from_vec(v, g, M), inv);
    return Vec(v + to_vec(perturbation(op, w, adjoint)));
  };
  auto true_residual = [&](const Vec& x, const Vec& b) {
    ComplexField xf = from_vec(x, g, M);
    ComplexField ax = adjoint ? op.apply_adjoint(xf) : op.apply(xf);
    return Vec(zz * x + to_vec(ax) - b);
  };

  const Vec b = to_vec(u);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    if (stats) *stats = ResolventStats{0, 0.0};
    return from_vec(Vec::Zero(b.size()), g, M);
  }

  const int m = std::max(1, opts.restart);
  Vec y = Vec::Zero(b.size());
  int it = 0;
  double rel = 1.0;
  while (it < opts.max_iter) {
    Vec r = b - K(y);
    double beta = r.norm();
    if (beta <= 0.5 * opts.tol * bnorm) {
      Vec x = precond(y);
      rel = true_residual(x, b).norm() / bnorm;
      if (rel <= opts.tol) break;
    }
    std::vector<Vec> V;
    V.reserve(static_cast<std::size_t>(m) + 1);
    V.push_back(r / beta);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    std::vector<double> cs(static_cast<std::size_t>(m));
    std::vector<cplx> sn(static_cast<std::size_t>(m));
    Vec gvec = Vec::Zero(m + 1);
    gvec[0] = beta;
    int k = 0;
    for (; k < m && it < opts.max_iter; ++k, ++it) {
      Vec w = K(V[static_cast<std::size_t>(k)]);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          const cplx h = V[static_cast<std::size_t>(i)].dot(w);
          H(i, k) += h;
          w -= h * V[static_cast<std::size_t>(i)];
        }
      }
      const double hn = w.norm();
      H(k + 1, k) = hn;
      for (int i = 0; i < k; ++i) {
        const cplx a = H(i, k), c = H(i + 1, k);
        H(i, k) = cs[static_cast<std::size_t>(i)] * a + sn[static_cast<std::size_t>(i)] * c;
        H(i + 1, k) = -std::conj(sn[static_cast<std::size_t>(i)]) * a + cs[static_cast<std::size_t>(i)] * c;
      }
      const cplx h1 = H(k, k), h2 = H(k + 1, k);
      const double t = std::sqrt(std::norm(h1) + std::norm(h2));
      if (std::abs(h1) == 0.0) {
        cs[static_cast<std::size_t>(k)] = 0.0;
        sn[static_cast<std::size_t>(k)] = 1.0;
      } else {
        cs[static_cast<std::size_t>(k)] = std::abs(h1) / t;
        sn[static_cast<std::size_t>(k)] = (h1 / std::abs(h1)) * std::conj(h2) / t;
      }
      H(k, k) = cs[static_cast<std::size_t>(k)] * h1 + sn[static_cast<std::size_t>(k)] * h2;
      H(k + 1, k) = 0.0;
      const cplx g0 = gvec[k];
      gvec[k] = cs[static_cast<std::size_t>(k)] * g0;
      gvec[k + 1] = -std::conj(sn[static_cast<std::size_t>(k)]) * g0;
      if (hn > 0.0) V.push_back(w / hn);
      if (std::abs(gvec[k + 1]) <= 0.5 * opts.tol * bnorm || hn == 0.0) {
        ++k;
        ++it;
        break;
      }
    }
    Vec coef = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(gvec.head(k));
    for (int i = 0; i < k; ++i) y += coef[i] * V[static_cast<std::size_t>(i)];
    Vec x = precond(y);
    rel = true_residual(x, b).norm() / bnorm;
    if (rel <= opts.tol) break;
  }
  if (stats) *stats = ResolventStats{it, rel};
  if (!(rel <= opts.tol))
    throw Error(ErrorCode::NearSpectrum, "Krylov solve did not reach the residual tolerance in " +
                                             std::to_string(opts.max_iter) + " iterations (residual " +
                                             std::to_string(rel) + ")");
  return from_vec(precond(y), g, M);
}

ComplexField resolvent_apply(const EvolutionOperator& op, cplx z, const Field& u, const ResolventOptions& opts) {
  return resolvent_apply(op, z, ComplexField{u, Field(u.grid(), u.modes())}, false, opts);
}

Field resolvent_apply(const EvolutionOperator& op, double z, const Field& u, const ResolventOptions& opts) {
  return resolvent_apply(op, cplx(z, 0.0), u, opts).re;
}

}  // namespace ulpar
