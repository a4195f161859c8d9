#include <fftw3.h>

#include <cmath>
#include <map>
#include <random>
#include <mutex>
#include <utility>

#include "ulpar/error.hpp"
#include "ulpar/spectral.hpp"

namespace ulpar {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanRegistry {
 public:
  static PlanRegistry& instance() {
    static PlanRegistry r;
    return r;
  }

  PlanPair get(std::size_t n, std::size_t modes) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, modes);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const int len = static_cast<int>(n);
    const int howmany = static_cast<int>(modes);
    const std::size_t nc = n / 2 + 1;
    double* rbuf = fftw_alloc_real(n * modes);
    fftw_complex* cbuf = fftw_alloc_complex(nc * modes);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.r2c = fftw_plan_many_dft_r2c(1, &len, howmany, rbuf, nullptr, howmany, 1, cbuf, nullptr, howmany, 1, flags);
    p.c2r = fftw_plan_many_dft_c2r(1, &len, howmany, cbuf, nullptr, howmany, 1, rbuf, nullptr, howmany, 1, flags);
    fftw_free(rbuf);
    fftw_free(cbuf);
    if (!p.r2c || !p.c2r) throw Error(ErrorCode::Construction, "FFTW planning failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, PlanPair> plans_;
};

}  // namespace

void fft_forward(std::size_t n, std::size_t modes, const double* in, cplx* out) {
  PlanPair p = PlanRegistry::instance().get(n, modes);
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void fft_inverse(std::size_t n, std::size_t modes, const cplx* in, double* out) {
  PlanPair p = PlanRegistry::instance().get(n, modes);
  std::vector<cplx> work(in, in + (n / 2 + 1) * modes);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(work.data()), out);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n * modes; ++i) out[i] *= scale;
}

Spectrum forward(const Field& u) {
  Spectrum s{u.grid(), u.modes(), std::vector<cplx>(u.grid().spectrum_size() * u.modes())};
  fft_forward(u.nx(), u.modes(), u.data().data(), s.data.data());
  return s;
}

Field inverse(const Spectrum& s) {
  std::vector<double> out(s.grid.size() * s.modes);
  fft_inverse(s.grid.size(), s.modes, s.data.data(), out.data());
  return Field(s.grid, s.modes, std::move(out));
}

Field derivative(const Field& u, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be nonnegative");
  if (order == 0) return u;
  Spectrum s = forward(u);
  const std::size_t nc = u.grid().spectrum_size();
  const std::size_t M = u.modes();
  for (std::size_t m = 0; m < nc; ++m) {
    const double k = u.grid().wavenumber(m);
    cplx factor = std::pow(cplx(0.0, k), order);
    if (m == nc - 1 && order % 2 == 1) factor = 0.0;
    for (std::size_t j = 0; j < M; ++j) s.at(m, j) *= factor;
  }
  return inverse(s);
}

Field apply_symbol(const Field& u, const std::vector<double>& sym) {
  Spectrum s = forward(u);
  if (sym.size() != s.data.size()) throw Error(ErrorCode::InvalidArgument, "symbol size mismatch");
  for (std::size_t i = 0; i < sym.size(); ++i) s.data[i] *= sym[i];
  return inverse(s);
}

Field apply_symbol(const Field& u, const std::function<double(double, std::size_t)>& sym) {
  const std::size_t nc = u.grid().spectrum_size();
  const std::size_t M = u.modes();
  std::vector<double> table(nc * M);
  for (std::size_t m = 0; m < nc; ++m)
    for (std::size_t j = 0; j < M; ++j) table[m * M + j] = sym(u.grid().wavenumber(m), j);
  return apply_symbol(u, table);
}

ComplexField apply_symbol(const ComplexField& u, const std::vector<cplx>& sym) {
  require_same_shape(u.re, u.im, "apply_symbol");
  Spectrum a = forward(u.re);
  Spectrum b = forward(u.im);
  if (sym.size() != a.data.size()) throw Error(ErrorCode::InvalidArgument, "symbol size mismatch");
  Spectrum re = a;
  Spectrum im = b;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const double cr = sym[i].real();
    const double ci = sym[i].imag();
    re.data[i] = cr * a.data[i] - ci * b.data[i];
    im.data[i] = ci * a.data[i] + cr * b.data[i];
  }
  return {inverse(re), inverse(im)};
}

std::vector<double> pad_to(const Field& u, std::size_t n_fine) {
  const std::size_t n = u.nx();
  const std::size_t M = u.modes();
  if (n_fine < n) throw Error(ErrorCode::InvalidArgument, "padding target smaller than grid");
  Spectrum s = forward(u);
  std::vector<cplx> fine((n_fine / 2 + 1) * M, cplx(0.0));
  const double scale = static_cast<double>(n_fine) / static_cast<double>(n);
  const std::size_t nc = n / 2 + 1;
  for (std::size_t m = 0; m < nc; ++m) {
    // The coarse Nyquist coefficient is split between +/- kappa_N on the fine grid.
    const double w = (m == nc - 1 && n_fine > n) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < M; ++j) fine[m * M + j] = w * scale * s.at(m, j);
  }
  std::vector<double> out(n_fine * M);
  fft_inverse(n_fine, M, fine.data(), out.data());
  return out;
}

Field truncate_from(const std::vector<double>& fine, std::size_t n_fine, const Field& like) {
  const std::size_t n = like.nx();
  const std::size_t M = like.modes();
  std::vector<cplx> spec((n_fine / 2 + 1) * M);
  fft_forward(n_fine, M, fine.data(), spec.data());
  const std::size_t nc = n / 2 + 1;
  std::vector<cplx> coarse(nc * M);
  const double scale = static_cast<double>(n) / static_cast<double>(n_fine);
  for (std::size_t m = 0; m < nc; ++m) {
    for (std::size_t j = 0; j < M; ++j) {
      cplx c = scale * spec[m * M + j];
      if (m == nc - 1 && n_fine > n) c = 2.0 * c.real();
      coarse[m * M + j] = c;
    }
  }
  std::vector<double> out(n * M);
  fft_inverse(n, M, coarse.data(), out.data());
  return Field(like.grid(), M, std::move(out));
}

}  // namespace ulpar

namespace ulpar {

Field random_smooth_field(const Grid1D& g, std::size_t modes, std::uint64_t seed, std::size_t max_index,
                          double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  Spectrum s{g, modes, std::vector<cplx>(g.spectrum_size() * modes, cplx(0.0))};
  const std::size_t top = std::min(max_index, g.size() / 2 - 1);
  for (std::size_t m = 0; m <= top; ++m) {
    const double decay = 1.0 / (1.0 + static_cast<double>(m * m));
    for (std::size_t j = 0; j < modes; ++j) {
      const double re = N(rng), im = m == 0 ? 0.0 : N(rng);
      s.at(m, j) = decay * cplx(re, im);
    }
  }
  Field f = inverse(s);
  const double peak = f.max_abs();
  return peak > 0.0 ? (amplitude / peak) * f : f;
}

}  // namespace ulpar
