#include "ulpar/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ulpar/error.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar {

const char* to_string(PathologyKind k) {
  switch (k) {
    case PathologyKind::chirp: return "chirp";
    case PathologyKind::mode_blocks: return "mode_blocks";
    case PathologyKind::smooth_control: return "smooth_control";
  }
  return "?";
}

PathologyKind pathology_from_string(const std::string& s) {
  if (s == "chirp") return PathologyKind::chirp;
  if (s == "mode_blocks") return PathologyKind::mode_blocks;
  if (s == "smooth_control") return PathologyKind::smooth_control;
  throw Error(ErrorCode::InvalidArgument,
              "unknown generator '" + s + "' (expected chirp, mode_blocks or smooth_control)");
}

namespace {

// C-infinity step: 0 for s <= 0, 1 for s >= 1.
double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

Field normalized(const Field& u) {
  const double n = ul_norm(u, 2.0);
  if (!(n > 0.0)) throw Error(ErrorCode::Construction, "generated field vanishes");
  return (1.0 / n) * u;
}

}  // namespace

std::size_t block_count(const PathologyGenerator& gen, const Grid1D& g) {
  if (gen.blocks > 0) return gen.blocks;
  return static_cast<std::size_t>(std::floor(2.0 * g.half_length() / gen.block_spacing + 1e-9));
}

Field generate(const PathologyGenerator& gen, const Grid1D& g, const TransverseOperator& B) {
  const std::size_t M = B.modes();
  const double L = g.half_length();
  switch (gen.kind) {
    case PathologyKind::chirp: {
      const double inner = L - gen.cutoff_margin, ramp = gen.cutoff_ramp;
      if (!(inner > 0.0) || !(ramp > 0.0) || inner + ramp > L)
        throw Error(ErrorCode::InvalidArgument, "chirp cutoff does not fit in the domain");
      return normalized(Field::from_function(g, M, [=](double x, std::size_t j) {
        if (j != 0) return 0.0;
        const double cut = smooth_step((inner + ramp - std::abs(x)) / ramp);
        return cut * std::sin(x * x);
      }));
    }
    case PathologyKind::mode_blocks: {
      if (!B.compact_resolvent())
        throw Error(ErrorCode::InvalidArgument, "mode blocks need a transverse operator with compact resolvent");
      if (!(gen.plateau > 0.0) || !(gen.blend > 0.0) || gen.block_spacing < gen.plateau + 2.0 * gen.blend)
        throw Error(ErrorCode::InvalidArgument, "block geometry is inconsistent");
      const std::size_t nb = block_count(gen, g);
      if (nb == 0) throw Error(ErrorCode::DomainTooSmall, "no block fits in the domain");
      if (nb > M)
        throw Error(ErrorCode::ScheduleExceedsModes, "block schedule needs " + std::to_string(nb) +
                                                         " modes but only " + std::to_string(M) + " are available");
      const double half = 0.5 * gen.plateau, blend = gen.blend, spacing = gen.block_spacing;
      return normalized(Field::from_function(g, M, [=](double x, std::size_t j) {
        if (j >= nb) return 0.0;
        const double c = -L + 0.5 * spacing + static_cast<double>(j) * spacing;
        return smooth_step((half + blend - std::abs(x - c)) / blend);
      }));
    }
    case PathologyKind::smooth_control: {
      const auto m = static_cast<double>(std::max<long>(1, std::lround(gen.control_wavenumber * L / M_PI)));
      const double kappa = M_PI * m / L;
      return normalized(Field::from_function(g, M, [=](double x, std::size_t j) {
        return j == 0 ? std::cos(kappa * x) : 0.0;
      }));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator kind");
}

std::vector<double> default_jump_grid() { return log_grid(1e-3, 1e-1, 9); }

JumpResult jump_measure(const EvolutionOperator& op, const Field& u0, const std::vector<double>& t_grid,
                        const NormSpec& spec) {
  if (op.perturbed()) throw Error(ErrorCode::InvalidArgument, "jump measure needs an unperturbed operator");
  if (t_grid.empty()) throw Error(ErrorCode::InvalidArgument, "time grid is empty");
  JumpResult r;
  r.infimum = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const double d = norm(semigroup_increment(op, t, u0), spec, &op.transverse());
    r.t.push_back(t);
    r.distance.push_back(d);
    if (d < r.infimum) {
      r.infimum = d;
      r.argmin_t = t;
    }
  }
  const double t_min = *std::min_element(t_grid.begin(), t_grid.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    if (r.t[i] > 10.0 * t_min * (1.0 + 1e-12) || !(r.distance[i] > 0.0)) continue;
    const double x = std::log(r.t[i]), y = std::log(r.distance[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2 && n * sxx - sx * sx > 0.0) r.continuity_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return r;
}

double mode_block_bound(const EvolutionOperator& op, const Field& u0, std::size_t j, double t) {
  if (j >= u0.modes()) throw Error(ErrorCode::ScheduleExceedsModes, "mode index exceeds the field's modes");
  std::vector<double> c(u0.size(), 0.0);
  for (std::size_t k = 0; k < u0.nx(); ++k) c[k * u0.modes() + j] = u0(k, j);
  const double lam = op.transverse().eigenvalue(j);
  return -std::expm1(-lam * t) * ul_norm(Field(u0.grid(), u0.modes(), std::move(c)), 2.0);
}

std::vector<LadderRung> standard_ladder() { return {{20.0, 4096, 16}, {40.0, 8192, 32}, {80.0, 16384, 64}}; }

LadderReport refinement_study(const PathologyGenerator& gen, const NormSpec& spec,
                              const std::vector<LadderRung>& ladder, double section_length,
                              const std::vector<double>& t_grid) {
  LadderReport rep;
  rep.kind = gen.kind;
  rep.nondecreasing = true;
  for (const auto& rung : ladder) {
    const Grid1D g(rung.L, rung.n_x);
    const auto B = make_dirichlet_laplacian(rung.modes, section_length);
    const auto op = assemble(g, B);
    const Field u = generate(gen, g, B);
    LadderEntry e;
    e.rung = rung;
    e.jump = jump_measure(op, u, t_grid, spec);
    if (gen.kind == PathologyKind::mode_blocks)
      e.block_bound = mode_block_bound(op, u, block_count(gen, g) - 1, e.jump.argmin_t);
    if (!rep.entries.empty() && e.jump.infimum < rep.entries.back().jump.infimum * (1.0 - 1e-12))
      rep.nondecreasing = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

Classification strong_vs_weak_classifier(const Field& u, std::vector<double> shifts) {
  if (shifts.empty()) {
    const double dx = u.grid().dx();
    for (double s = dx; s <= 1.0 + 1e-12; s *= 2.0) shifts.push_back(s);
  }
  Classification c;
  c.curve = translation_modulus(u, 2.0, shifts);
  c.ul_s_candidate = c.curve.ul_s_candidate;
  return c;
}

namespace {

// Window sums (trapezoid, half weights at the ends) of f centered at every node, by prefix sums.
std::vector<double> window_sums(const std::vector<double>& f, std::size_t r) {
  const std::size_t n = f.size();
  std::vector<double> pre(n + 2 * r + 2, 0.0);
  for (std::size_t i = 0; i < n + 2 * r + 1; ++i) pre[i + 1] = pre[i] + f[(i + n - r % n) % n];
  std::vector<double> w(n);
  for (std::size_t c = 0; c < n; ++c)
    w[c] = pre[c + 2 * r + 1] - pre[c] - 0.5 * (f[(c + n - r % n) % n] + f[(c + r) % n]);
  return w;
}

double fast_ul(const std::vector<double>& f, std::size_t r, double dx) {
  const auto w = window_sums(f, r);
  return std::sqrt(std::max(0.0, *std::max_element(w.begin(), w.end())) * dx);
}

std::vector<double> squared_rows(const Field& u, const std::vector<double>& scale) {
  std::vector<double> f(u.nx(), 0.0);
  for (std::size_t k = 0; k < u.nx(); ++k) {
    const auto row = u.row(k);
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += scale[j] * scale[j] * row[j] * row[j];
    f[k] = s;
  }
  return f;
}

struct CorpusGeometry {
  const TransverseOperator& B;
  const Corpus& corpus;
  std::size_t r;
  double dx;
  std::vector<double> ones, db;

  Field project(const Field& v) const {
    Spectrum s = forward(v);
    const std::size_t M = v.modes();
    for (std::size_t m = 0; m < v.grid().spectrum_size(); ++m)
      for (std::size_t j = 0; j < M; ++j)
        if (v.grid().wavenumber(m) > corpus.kappa_max * (1.0 + 1e-12) ||
            (corpus.max_mode > 0 && j >= corpus.max_mode))
          s.at(m, j) = 0.0;
    return inverse(s);
  }

  double constraint(const Field& v) const {
    if (corpus.constraint == CorpusConstraint::db_ul) return fast_ul(squared_rows(v, db), r, dx);
    return fast_ul(squared_rows(v, ones), r, dx) + fast_ul(squared_rows(derivative(v, 1), ones), r, dx);
  }

  Field retract(const Field& v) const {
    const double c = constraint(v);
    return c > corpus.R ? (corpus.R / c) * v : v;
  }
};

}  // namespace

DensityGapReport density_gap(const Field& u, const TransverseOperator& B, const Corpus& corpus, std::size_t restarts,
                             std::size_t iterations, std::uint64_t seed) {
  if (B.modes() != u.modes()) throw Error(ErrorCode::GridMismatch, "operator mode count differs from field");
  if (!(corpus.R > 0.0) || !(corpus.kappa_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "corpus radius and band must be positive");
  if (restarts == 0) throw Error(ErrorCode::InvalidArgument, "density gap needs at least one restart");
  const Grid1D& g = u.grid();
  const std::size_t M = u.modes(), n = u.nx();
  CorpusGeometry geo{B, corpus, g.window_half_width(), g.dx(), std::vector<double>(M, 1.0), std::vector<double>(M)};
  for (std::size_t j = 0; j < M; ++j) geo.db[j] = B.floored_power(j, 1.0);

  const auto band_index = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(g.spectrum_size() - 1), std::floor(corpus.kappa_max * g.half_length() / M_PI)));

  DensityGapReport rep;
  rep.best = std::numeric_limits<double>::infinity();
  for (std::size_t rs = 0; rs < restarts; ++rs) {
    Field v = rs == 0 ? u
                      : random_smooth_field(g, M, seed * 1000003ULL + rs, std::max<std::size_t>(1, band_index),
                                            0.25 + 0.75 * static_cast<double>(rs) / static_cast<double>(restarts));
    v = geo.retract(geo.project(v));
    Field best_v = v;
    double best = fast_ul(squared_rows(u - v, geo.ones), geo.r, geo.dx);
    for (std::size_t it = 0; it < iterations && best > 1e-14; ++it) {
      const Field diff = u - v;
      const auto w = window_sums(squared_rows(diff, geo.ones), geo.r);
      const double wmax = *std::max_element(w.begin(), w.end());
      if (!(wmax > 0.0)) break;
      const double beta = 30.0 / wmax;
      std::vector<double> p(n);
      double z = 0.0;
      for (std::size_t c = 0; c < n; ++c) z += (p[c] = std::exp(beta * (w[c] - wmax)));
      for (double& x : p) x /= z;
      const auto W = window_sums(p, geo.r);
      std::vector<double> next = v.to_vector();
      const auto dd = diff.data();
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < M; ++j) next[k * M + j] += 0.5 * W[k] * dd[k * M + j];
      v = geo.retract(geo.project(Field(g, M, std::move(next))));
      const double obj = fast_ul(squared_rows(u - v, geo.ones), geo.r, geo.dx);
      if (obj < best) {
        best = obj;
        best_v = v;
      }
    }
    const double exact = ul_norm(u - best_v, 2.0);
    rep.per_restart.push_back(exact);
    if (exact < rep.best) {
      rep.best = exact;
      rep.best_restart = rs;
    }
  }
  const auto [lo, hi] = std::minmax_element(rep.per_restart.begin(), rep.per_restart.end());
  rep.spread = *hi - *lo;
  return rep;
}

}  // namespace ulpar
