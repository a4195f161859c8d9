#include "ulpar/norms.hpp"

#include <algorithm>
#include <cmath>

#include "ulpar/error.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar {
namespace {

void check_p(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "norm exponent must be >= 1");
}

// |u_k|^p, or |u_k| when p is infinite.
std::vector<double> pointwise_power(const Field& u, double p, double alpha, const TransverseOperator* B) {
  std::vector<double> f = pointwise_norm(u, alpha, B);
  if (std::isfinite(p))
    for (double& v : f) v = (p == 2.0) ? v * v : std::pow(v, p);
  return f;
}

double root(double s, double p) {
  if (!std::isfinite(p)) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

}  // namespace

std::vector<double> pointwise_norm(const Field& u, double alpha, const TransverseOperator* B) {
  const std::size_t M = u.modes();
  std::vector<double> scale(M, 1.0);
  if (alpha != 0.0) {
    if (alpha < 0.0 || alpha > 1.0) throw Error(ErrorCode::InvalidArgument, "transverse power must lie in [0, 1]");
    if (B == nullptr) throw Error(ErrorCode::MissingOperator, "transverse power requested without an operator");
    if (B->modes() != M) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");
    for (std::size_t j = 0; j < M; ++j) scale[j] = B->floored_power(j, alpha);
  }
  std::vector<double> out(u.nx());
  auto d = u.data();
  for (std::size_t k = 0; k < u.nx(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      const double v = scale[j] * d[k * M + j];
      s += v * v;
    }
    out[k] = std::sqrt(s);
  }
  return out;
}

double flat_norm(const Field& u, double p, double alpha, const TransverseOperator* B) {
  check_p(p);
  std::vector<double> f = pointwise_power(u, p, alpha, B);
  if (!std::isfinite(p)) return *std::max_element(f.begin(), f.end());
  double s = 0.0;
  for (double v : f) s += v;
  return root(s * u.grid().dx(), p);
}

WindowScan ul_scan(const Field& u, double p, double alpha, const TransverseOperator* B) {
  check_p(p);
  const std::size_t n = u.nx();
  const std::size_t r = u.grid().window_half_width();
  if (2 * r + 1 > n) throw Error(ErrorCode::DomainTooSmall, "unit window is wider than the domain");
  std::vector<double> f = pointwise_power(u, p, alpha, B);
  const double dx = u.grid().dx();
  WindowScan scan;
  scan.per_center.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t start = (c + n - r) % n;
    double v;
    if (std::isfinite(p)) {
      double s = 0.0;
      for (std::size_t i = 0; i <= 2 * r; ++i) s += f[(start + i) % n];
      s -= 0.5 * (f[start] + f[(start + 2 * r) % n]);
      v = root(s * dx, p);
    } else {
      v = 0.0;
      for (std::size_t i = 0; i <= 2 * r; ++i) v = std::max(v, f[(start + i) % n]);
    }
    scan.per_center[c] = v;
    if (v > scan.value) {
      scan.value = v;
      scan.argmax = c;
    }
  }
  return scan;
}

double ul_norm(const Field& u, double p, double alpha, const TransverseOperator* B) {
  return ul_scan(u, p, alpha, B).value;
}

double ul_norm(const Field& u, const NormSpec& spec, const TransverseOperator* B) {
  if (spec.kind == NormKind::sobolev_ul) return sobolev_ul_norm(u, spec.order, spec.p, spec.alpha, B);
  return ul_norm(u, spec.p, spec.alpha, B);
}

double sobolev_ul_norm(const Field& u, int order, double p, double alpha, const TransverseOperator* B) {
  if (order < 0 || order > 2) throw Error(ErrorCode::InvalidArgument, "Sobolev order must be 0, 1 or 2");
  double s = ul_norm(u, p, alpha, B);
  for (int nu = 1; nu <= order; ++nu) s += ul_norm(derivative(u, nu), p, alpha, B);
  return s;
}

double weighted_norm(const Field& u, double p, const Weight& w, double alpha, const TransverseOperator* B) {
  check_p(p);
  if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "weighted norm needs a finite exponent");
  std::vector<double> f = pointwise_power(u, p, alpha, B);
  const Grid1D& g = u.grid();
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += w.value(g, g.x(k)) * f[k];
  return root(s * g.dx(), p);
}

std::vector<double> lattice_centers(const Grid1D& g, double spacing) {
  if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "center spacing must be positive");
  const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(spacing / g.dx() + 1e-9)));
  std::vector<double> c;
  for (std::size_t k = 0; k < g.size(); k += stride) c.push_back(g.x(k));
  return c;
}

SupWeightedReport equivalence_constants(const Grid1D& g, double p, double mu, const std::vector<double>& centers) {
  check_p(p);
  if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "weighted norm needs a finite exponent");
  if (centers.empty()) throw Error(ErrorCode::InvalidArgument, "center list is empty");
  const std::size_t n = g.size();
  const std::size_t r = g.window_half_width();
  const double R = static_cast<double>(r) * g.dx();

  // Worst distance from a node to its nearest center.
  std::vector<double> sorted;
  sorted.reserve(centers.size());
  for (double c : centers) sorted.push_back(g.periodic_offset(c, 0.0));
  std::sort(sorted.begin(), sorted.end());
  double delta = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = g.x(k);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double best = kInf;
    if (it != sorted.end()) best = std::min(best, g.periodic_distance(x, *it));
    if (it != sorted.begin()) best = std::min(best, g.periodic_distance(x, *(it - 1)));
    best = std::min(best, g.periodic_distance(x, sorted.front()));
    best = std::min(best, g.periodic_distance(x, sorted.back()));
    delta = std::max(delta, best);
  }

  SupWeightedReport rep;
  rep.c1 = root(weight_profile(mu, R + delta), p);

  // Unit lattice of windows; each node is interior to the window of its nearest lattice point.
  const std::size_t stride = std::max<std::size_t>(1, r);
  double worst = 0.0;
  for (double xs : centers) {
    double sum = 0.0;
    for (std::size_t a = 0; a < n; a += stride) {
      const double d = std::max(0.0, g.periodic_distance(g.x(a), xs) - R);
      sum += weight_profile(mu, d);
    }
    worst = std::max(worst, sum);
  }
  rep.c2 = root(worst, p);
  return rep;
}

SupWeightedReport sup_weighted_norm(const Field& u, double p, double mu, const std::vector<double>& centers,
                                    double alpha, const TransverseOperator* B) {
  SupWeightedReport rep = equivalence_constants(u.grid(), p, mu, centers);
  std::vector<double> f = pointwise_power(u, p, alpha, B);
  const Grid1D& g = u.grid();
  for (double xs : centers) {
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) s += weight_profile(mu, g.periodic_offset(g.x(k), xs)) * f[k];
    const double v = root(s * g.dx(), p);
    if (v > rep.value) {
      rep.value = v;
      rep.argmax_center = xs;
    }
  }
  return rep;
}

double norm(const Field& u, const NormSpec& spec, const TransverseOperator* B) {
  switch (spec.kind) {
    case NormKind::flat: return flat_norm(u, spec.p, spec.alpha, B);
    case NormKind::weighted:
      return weighted_norm(u, spec.p, Weight(spec.mu, spec.centers.empty() ? 0.0 : spec.centers.front()), spec.alpha,
                           B);
    case NormKind::ul: return ul_norm(u, spec.p, spec.alpha, B);
    case NormKind::ul_sup_weighted: {
      const auto centers = spec.centers.empty() ? lattice_centers(u.grid()) : spec.centers;
      return sup_weighted_norm(u, spec.p, spec.mu, centers, spec.alpha, B).value;
    }
    case NormKind::sobolev_ul: return sobolev_ul_norm(u, spec.order, spec.p, spec.alpha, B);
  }
  return 0.0;
}

ModulusCurve translation_modulus(const Field& u, double p, const std::vector<double>& shifts, double tolerance) {
  ModulusCurve curve;
  curve.reference = ul_norm(u, p);
  const double dx = u.grid().dx();
  double smallest = kInf;
  double at_smallest = 0.0;
  for (double xi : shifts) {
    const double q = xi / dx;
    const double nodes = std::round(q);
    if (std::abs(q - nodes) > 1e-9 * std::max(1.0, std::abs(q)))
      throw Error(ErrorCode::InvalidArgument, "shift " + std::to_string(xi) + " is not a multiple of dx");
    const double v = ul_norm(u - u.shifted(static_cast<long>(nodes)), p);
    curve.shifts.push_back(xi);
    curve.values.push_back(v);
    if (nodes != 0.0 && std::abs(xi) < smallest) {
      smallest = std::abs(xi);
      at_smallest = v;
    }
  }
  curve.ul_s_candidate = at_smallest <= tolerance * curve.reference;
  return curve;
}

double h2_db_ul_norm(const Field& u, const TransverseOperator& B) {
  return sobolev_ul_norm(u, 2, 2.0) + ul_norm(u, 2.0, 1.0, &B);
}

double h1_db_half_ul_norm(const Field& u, const TransverseOperator& B) {
  return sobolev_ul_norm(u, 1, 2.0) + ul_norm(u, 2.0, 0.5, &B);
}

}  // namespace ulpar
