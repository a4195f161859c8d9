#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ulpar/field.hpp"
#include "ulpar/grid.hpp"

namespace ulpar::testing {

// Random field: a few localized bumps plus band-limited noise, so that both
// smooth and sharply varying profiles appear across seeds.
inline Field random_field(const Grid1D& g, std::size_t modes, std::uint64_t seed, double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> pos(-g.half_length(), g.half_length());
  std::uniform_real_distribution<double> width(0.2, 3.0);
  const int bumps = 1 + static_cast<int>(rng() % 4);
  std::vector<double> c(g.size() * modes, 0.0);
  for (int b = 0; b < bumps; ++b) {
    const double x0 = pos(rng), w = width(rng);
    std::vector<double> amp(modes);
    for (auto& a : amp) a = amplitude * n01(rng);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double d = g.periodic_offset(g.x(k), x0);
      const double e = std::exp(-0.5 * d * d / (w * w));
      for (std::size_t j = 0; j < modes; ++j) c[k * modes + j] += amp[j] * e;
    }
  }
  const int waves = static_cast<int>(rng() % 6);
  for (int q = 1; q <= waves; ++q) {
    const double kap = M_PI * static_cast<double>(q) / g.half_length();
    const double ph = pos(rng);
    const std::size_t j = rng() % modes;
    const double a = 0.3 * amplitude * n01(rng);
    for (std::size_t k = 0; k < g.size(); ++k) c[k * modes + j] += a * std::cos(kap * g.x(k) + ph);
  }
  return Field(g, modes, std::move(c));
}

inline Field constant_mode(const Grid1D& g, std::size_t modes, std::size_t j, double value = 1.0) {
  return Field::from_function(g, modes, [=](double, std::size_t i) { return i == j ? value : 0.0; });
}

inline double rel_diff(const Field& a, const Field& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a.data()[i] - b.data()[i]) * (a.data()[i] - b.data()[i]);
    den += b.data()[i] * b.data()[i];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace ulpar::testing
