#include "ulpar/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ulpar/error.hpp"
#include "ulpar/quadrature.hpp"

namespace ulpar {
namespace {

void require_match(const EvolutionOperator& op, const Field& u) {
  if (u.grid() != op.grid() || u.modes() != op.modes())
    throw Error(ErrorCode::GridMismatch, "field does not match the operator grid");
}

ComplexField random_complex(const Grid1D& g, std::size_t M, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> r(g.size() * M), i(g.size() * M);
  for (auto& v : r) v = N(rng);
  for (auto& v : i) v = N(rng);
  return {Field(g, M, std::move(r)), Field(g, M, std::move(i))};
}

double cnorm(const ComplexField& f) {
  double s = 0.0;
  for (double v : f.re.data()) s += v * v;
  for (double v : f.im.data()) s += v * v;
  return std::sqrt(s);
}

ComplexField cscale(const ComplexField& f, double c) { return {c * f.re, c * f.im}; }

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

Field semigroup_exact(const EvolutionOperator& op, double t, const Field& u) {
  require_match(op, u);
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "semigroup time must be >= 0");
  if (op.perturbed())
    throw Error(ErrorCode::InvalidArgument, "exact multipliers need a constant-coefficient operator");
  if (t == 0.0) return u;
  return apply_symbol(u, op.symbol_table([t](double s) { return std::exp(-s * t); }));
}

Field semigroup_increment(const EvolutionOperator& op, double t, const Field& u) {
  require_match(op, u);
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "semigroup time must be >= 0");
  if (op.perturbed())
    throw Error(ErrorCode::InvalidArgument, "exact multipliers need a constant-coefficient operator");
  return apply_symbol(u, op.symbol_table([t](double s) { return std::expm1(-s * t); }));
}

double default_sector_bound(double phi) { return 4.0 / std::sin(phi); }

Field semigroup_contour(const EvolutionOperator& op, double t, const Field& u, const ContourSpec& spec) {
  require_match(op, u);
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "contour semigroup needs t > 0");
  if (spec.nodes < 2 || spec.nodes % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "contour node count must be even and >= 2");
  const int N = spec.nodes / 2;
  const double h = spec.h_coef / N;
  const double mu = spec.mu_coef * std::min(N, spec.cap) / t;
  const double crossing = spec.shift + mu * (1.0 - std::sin(spec.alpha));
  const double asymptote = std::numbers::pi / 2 - spec.alpha;

  if (!op.perturbed() && !(crossing > -op.symbol_min()))
    throw Error(ErrorCode::Contour, "contour crosses the real axis inside the spectrum");
  if (spec.sector) {
    if (!(spec.sector->phi < asymptote))
      throw Error(ErrorCode::Contour, "sector half-angle is not inside the contour's asymptotic opening");
    if (!(crossing > -spec.sector->omega))
      throw Error(ErrorCode::Contour, "contour crosses the real axis to the left of the sector vertex");
  }

  std::vector<double> re(u.size(), 0.0), im(u.size(), 0.0);
  for (int k = 0; k < N; ++k) {
    const double s = (k + 0.5) * h;
    const cplx w = cplx(0.0, s) - spec.alpha;
    const cplx z = spec.shift + mu * (1.0 + std::sin(w));
    const cplx dz = cplx(0.0, mu) * std::cos(w);
    const cplx c = std::exp(z * t) * dz;
    ComplexField r{u, u};
    try {
      r = resolvent_apply(op, z, ComplexField{u, Field(u.grid(), u.modes())}, false, spec.resolvent);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearSpectrum) throw Error(ErrorCode::Contour, std::string("node solve failed: ") + e.what());
      throw;
    }
    auto a = r.re.data();
    auto b = r.im.data();
    // Imaginary part of c (a + i b); the conjugate node doubles the real part of the sum / i.
    for (std::size_t i = 0; i < re.size(); ++i) re[i] += c.imag() * a[i] + c.real() * b[i];
  }
  for (double& v : re) v *= h / std::numbers::pi;
  (void)im;
  return Field(u.grid(), u.modes(), std::move(re));
}

Field semigroup(const EvolutionOperator& op, double t, const Field& u) {
  if (!op.perturbed()) return semigroup_exact(op, t, u);
  if (t == 0.0) return u;
  return semigroup_contour(op, t, u);
}

Field semigroup_minus_identity(const EvolutionOperator& op, double t, const Field& u) {
  if (!op.perturbed()) return semigroup_increment(op, t, u);
  return semigroup(op, t, u) - u;
}

double resolvent_norm(const EvolutionOperator& op, cplx z, std::uint64_t seed, int iterations, int restarts) {
  // (z - A)^{-1} = -(-z + A)^{-1}; the sign does not affect the norm.
  std::mt19937_64 rng(seed);
  double best = 0.0;
  const Grid1D& g = op.grid();
  for (int r = 0; r < restarts; ++r) {
    ComplexField x = random_complex(g, op.modes(), rng);
    x = cscale(x, 1.0 / cnorm(x));
    double last = 0.0;
    for (int it = 0; it < iterations; ++it) {
      ComplexField y = resolvent_apply(op, -z, x, false);
      const double yn = cnorm(y);
      best = std::max(best, yn);
      if (std::abs(yn - last) <= 1e-12 * yn) break;
      last = yn;
      ComplexField w = resolvent_apply(op, -z, y, true);
      const double wn = cnorm(w);
      if (wn == 0.0) break;
      x = cscale(w, 1.0 / wn);
    }
  }
  return best;
}

SectorReport verify_sectorial(const EvolutionOperator& op, const SectorParams& sector, int n_samples,
                              std::uint64_t seed, double r_min, double r_max) {
  if (!(sector.phi > 0.0 && sector.phi < std::numbers::pi / 2))
    throw Error(ErrorCode::InvalidArgument, "sector angle must lie in (0, pi/2)");
  if (n_samples < 3) throw Error(ErrorCode::InvalidArgument, "need at least three sector samples");
  SectorReport rep;
  rep.M_declared = sector.M > 0.0 ? sector.M : default_sector_bound(sector.phi);
  const int per_ray = n_samples / 3;
  const int on_axis = n_samples - 2 * per_ray;
  struct Ray {
    double angle;
    int count;
  };
  const Ray rays[3] = {{sector.phi, per_ray}, {-sector.phi, per_ray}, {std::numbers::pi, on_axis}};
  std::uint64_t s = seed;
  for (const Ray& ray : rays) {
    const std::vector<double> radii = log_grid(r_min, r_max, ray.count);
    for (double r : radii) {
      const cplx z = sector.omega + std::polar(r, ray.angle);
      SectorSample smp;
      smp.z = z;
      try {
        smp.resolvent_norm = resolvent_norm(op, z, ++s);
      } catch (const Error& e) {
        rep.failure = "resolvent failed at z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                      "): " + e.what();
        rep.worst_z = z;
        rep.pass = false;
        return rep;
      }
      smp.scaled = std::abs(z - sector.omega) * smp.resolvent_norm;
      if (smp.scaled > rep.M_observed) {
        rep.M_observed = smp.scaled;
        rep.worst_z = z;
      }
      rep.samples.push_back(smp);
    }
  }
  rep.pass = rep.M_observed <= rep.M_declared;
  return rep;
}

std::vector<double> log_grid(double a, double b, int n) {
  if (!(a > 0.0) || !(b >= a) || n < 1) throw Error(ErrorCode::InvalidArgument, "bad log grid bounds");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = a;
    return g;
  }
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
  g.front() = a;
  g.back() = b;
  return g;
}

std::vector<double> default_t_grid() { return log_grid(1e-6, 1e2, 49); }

IntermediateReport intermediate_norm(const EvolutionOperator& op, double theta, const Field& u,
                                     const std::vector<double>& t_grid, BaseNorm base) {
  require_match(op, u);
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::InvalidArgument, "theta must lie in (0, 1)");
  if (t_grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "time grid needs at least two points");
  auto X = [base](const Field& f) { return base == BaseNorm::flat_l2 ? flat_norm(f, 2.0) : ul_norm(f, 2.0); };
  IntermediateReport rep;
  rep.base = X(u);
  rep.t = t_grid;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double d = X(semigroup_minus_identity(op, t, u));
    rep.increments.push_back(d);
    const double ratio = d / std::pow(t, theta);
    if (ratio > rep.sup_term) {
      rep.sup_term = ratio;
      arg = i;
    }
  }
  rep.argmax_t = t_grid[arg];
  rep.maximizer_at_edge = rep.sup_term > 0.0 && (arg == 0 || arg + 1 == t_grid.size());
  rep.value = rep.base + rep.sup_term;

  std::vector<double> lx, ly;
  const double tmin = *std::min_element(t_grid.begin(), t_grid.end());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] <= 10.0 * tmin * (1.0 + 1e-12) && rep.increments[i] > 0.0) {
      lx.push_back(std::log(t_grid[i]));
      ly.push_back(std::log(rep.increments[i]));
    }
  }
  rep.small_t_slope = least_squares_slope(lx, ly);
  return rep;
}

XThetaReport x_theta_norm(const EvolutionOperator& op, double theta, const Field& u, double mu,
                          const std::vector<double>& centers, double lambda) {
  require_match(op, u);
  if (theta < 0.0 || theta > 1.0) throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, 1]");
  if (!(op.symbol_min() + lambda > 0.0))
    throw Error(ErrorCode::Shift, "shift " + std::to_string(lambda) + " does not make the spectrum positive");
  if (centers.empty()) throw Error(ErrorCode::InvalidArgument, "center list is empty");
  Field v = theta == 0.0 ? u : apply_symbol(u, op.symbol_table([&](double s) { return std::pow(s + lambda, theta); }));
  XThetaReport rep;
  for (double c : centers) {
    const double val = weighted_norm(v, 2.0, Weight(mu, c));
    if (val > rep.value) {
      rep.value = val;
      rep.argmax_center = c;
    }
  }
  return rep;
}

UlOperatorReport ul_operator_check(const EvolutionOperator& op, const Field& u, double mu,
                                   const std::vector<double>& centers, double theta, double lambda, double z) {
  require_match(op, u);
  if (centers.empty()) throw Error(ErrorCode::InvalidArgument, "center list is empty");
  UlOperatorReport rep;
  rep.centers = centers;
  const Field w = -1.0 * resolvent_apply(op, -z, u);
  rep.min_constant = kInf;
  for (double c : centers) {
    const Weight wt(mu, c);
    const double nu = weighted_norm(u, 2.0, wt);
    if (nu == 0.0) continue;
    const double C = std::abs(z) * weighted_norm(w, 2.0, wt) / nu;
    rep.constants.push_back(C);
    rep.max_constant = std::max(rep.max_constant, C);
    rep.min_constant = std::min(rep.min_constant, C);
  }
  if (rep.constants.empty()) rep.min_constant = 0.0;
  rep.ratio = rep.min_constant > 0.0 ? rep.max_constant / rep.min_constant : 1.0;
  rep.x_theta = x_theta_norm(op, theta, u, mu, centers, lambda);
  return rep;
}

double integrated_identity_defect(const EvolutionOperator& op, double t, const Field& u) {
  require_match(op, u);
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "integration time must be positive");
  const GaussRule gl = gauss_legendre(10);
  const int K = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2.0 * t * op.symbol_max(), 1.0)))) + 2);
  std::vector<double> acc(u.size(), 0.0);
  auto add_panel = [&](double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const Field f = semigroup(op, mid + half * gl.nodes[i], u);
      auto d = f.data();
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += half * gl.weights[i] * d[k];
    }
  };
  double lo = t * std::ldexp(1.0, -K);
  add_panel(0.0, lo);
  for (int k = K; k >= 1; --k) {
    const double hi = t * std::ldexp(1.0, -(k - 1));
    add_panel(lo, hi);
    lo = hi;
  }
  const Field integral(u.grid(), u.modes(), std::move(acc));
  const Field lhs = op.apply(integral);
  const Field rhs = -1.0 * semigroup_minus_identity(op, t, u);
  const double denom = flat_norm(rhs, 2.0);
  const double num = flat_norm(lhs - rhs, 2.0);
  return denom > 0.0 ? num / denom : num;
}

}  // namespace ulpar
