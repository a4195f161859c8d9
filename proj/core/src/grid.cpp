#include "ulpar/grid.hpp"

#include <cmath>
#include <numbers>

#include "ulpar/error.hpp"

namespace ulpar {

Grid1D::Grid1D(double half_length, std::size_t n_x) : half_length_(half_length), n_(n_x), dx_(0.0) {
  if (!(half_length >= 8.0) || !std::isfinite(half_length))
    throw Error(ErrorCode::DomainTooSmall, "half length must be at least 8, got " + std::to_string(half_length));
  if (n_x < 16 || (n_x & (n_x - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "n_x must be a power of two >= 16, got " + std::to_string(n_x));
  dx_ = 2.0 * half_length / static_cast<double>(n_x);
}

double Grid1D::periodic_offset(double x, double y) const noexcept {
  const double P = period();
  double d = std::fmod(x - y, P);
  if (d >= half_length_) d -= P;
  if (d < -half_length_) d += P;
  return d;
}

double Grid1D::periodic_distance(double x, double y) const noexcept { return std::abs(periodic_offset(x, y)); }

double Grid1D::wavenumber(std::size_t m) const noexcept {
  return std::numbers::pi * static_cast<double>(m) / half_length_;
}

std::size_t Grid1D::window_half_width() const noexcept {
  return static_cast<std::size_t>(std::llround(1.0 / dx_));
}

}  // namespace ulpar
