#pragma once

#include <cstddef>

namespace ulpar {

// Uniform periodic grid on [-L, L) with n_x nodes, x_k = -L + k dx.
class Grid1D {
 public:
  Grid1D(double half_length, std::size_t n_x);

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double period() const noexcept { return 2.0 * half_length_; }
  double x(std::size_t k) const noexcept { return -half_length_ + static_cast<double>(k) * dx_; }

  // Signed distance x - y reduced to [-L, L).
  double periodic_offset(double x, double y) const noexcept;
  double periodic_distance(double x, double y) const noexcept;

  // kappa_m = pi m / L for the half spectrum index m in [0, n/2].
  double wavenumber(std::size_t m) const noexcept;
  std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

  // Number of nodes on each side of a window center; the window spans
  // [a - r dx, a + r dx] with r dx as close to 1 as the grid allows.
  std::size_t window_half_width() const noexcept;

  friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
    return a.n_ == b.n_ && a.half_length_ == b.half_length_;
  }

 private:
  double half_length_;
  std::size_t n_;
  double dx_;
};

}  // namespace ulpar
