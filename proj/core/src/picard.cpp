#include "ulpar/picard.hpp"

#include <cmath>

#include "ulpar/error.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/spectral.hpp"
#include "ulpar/stepper.hpp"

namespace ulpar {

Trajectory picard_map(const EvolutionOperator& op, const Nonlinearity& F, const Field& u0, const Trajectory& x,
                      double dt) {
  if (op.perturbed()) throw Error(ErrorCode::InvalidArgument, "the Picard map is evaluated for P = 0 only");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory is empty");
  const auto& S = op.symbols();
  std::vector<double> E(S.size()), Q1(S.size()), Q2(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    const double z = -S[i] * dt;
    E[i] = std::exp(z);
    Q1[i] = dt * phi1(z);
    Q2[i] = dt * phi2(z);
  }
  Trajectory out;
  out.reserve(x.size());
  out.push_back(u0);
  Spectrum psi = forward(u0);
  Spectrum f_prev = forward(F.apply(x[0], op.transverse()));
  for (std::size_t n = 0; n + 1 < x.size(); ++n) {
    const Spectrum f_next = forward(F.apply(x[n + 1], op.transverse()));
    for (std::size_t i = 0; i < psi.data.size(); ++i)
      psi.data[i] = E[i] * psi.data[i] + Q1[i] * f_prev.data[i] + Q2[i] * (f_next.data[i] - f_prev.data[i]);
    out.push_back(inverse(psi));
    f_prev = f_next;
  }
  return out;
}

Trajectory picard_iterate(const EvolutionOperator& op, const Nonlinearity& F, const Field& u0, double horizon,
                          double dt, int iterations) {
  const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "horizon shorter than dt");
  Trajectory x(n + 1, u0);
  for (int k = 0; k < iterations; ++k) x = picard_map(op, F, u0, x, dt);
  return x;
}

PicardReport picard_probe(const EvolutionOperator& op, const Nonlinearity& F, const Field& u0,
                          const std::vector<double>& lambdas, const PicardOptions& opts) {
  if (F.meta().gamma != 0.0) throw Error(ErrorCode::InvalidArgument, "the probe needs a globally Lipschitz F");
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "lambda ladder is empty");
  for (double l : lambdas)
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const auto n = static_cast<std::size_t>(std::llround(opts.horizon / opts.dt));
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "horizon shorter than dt");

  const Grid1D& g = op.grid();
  const Field drift = random_smooth_field(g, op.modes(), opts.seed, 6, opts.amplitude);
  const Field offset = random_smooth_field(g, op.modes(), opts.seed + 1, 6, opts.amplitude);
  Trajectory x, y;
  std::vector<double> times;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * opts.dt;
    times.push_back(t);
    x.push_back(axpy(u0, t, drift));
    y.push_back(x.back() + offset);
  }
  const Trajectory px = picard_map(op, F, u0, x, opts.dt);
  const Trajectory py = picard_map(op, F, u0, y, opts.dt);
  const std::vector<double> tg = log_grid(1e-6, 1e2, 40);
  std::vector<double> dpsi(n + 1), dx(n + 1);
  const double doff = intermediate_norm(op, opts.theta, offset, tg).value;
  for (std::size_t k = 0; k <= n; ++k) {
    dpsi[k] = k == 0 ? 0.0 : intermediate_norm(op, opts.theta, px[k] - py[k], tg).value;
    dx[k] = doff;
  }

  PicardReport rep;
  rep.lambdas = lambdas;
  rep.nonincreasing = true;
  for (double lam : lambdas) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double w = std::exp(-lam * times[k]);
      num = std::max(num, w * dpsi[k]);
      den = std::max(den, w * dx[k]);
    }
    const double f = den > 0.0 ? num / den : 0.0;
    if (!rep.factors.empty() && f > rep.factors.back()) rep.nonincreasing = false;
    rep.factors.push_back(f);
    if (!rep.reached_half && f <= 0.5) {
      rep.reached_half = true;
      rep.lambda_half = lam;
    }
  }
  return rep;
}

}  // namespace ulpar
