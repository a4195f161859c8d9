#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ulpar/grid.hpp"

namespace ulpar {

// u(x_k) in span(e_1..e_M), stored row-major as coeffs[k * M + j].
// Immutable: copies share storage.
class Field {
 public:
  Field(const Grid1D& grid, std::size_t modes);
  Field(const Grid1D& grid, std::size_t modes, std::vector<double> coeffs);

  static Field from_function(const Grid1D& grid, std::size_t modes,
                             const std::function<double(double x, std::size_t j)>& f);

  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t modes() const noexcept { return modes_; }
  std::size_t nx() const noexcept { return grid_.size(); }
  std::size_t size() const noexcept { return data_->size(); }

  double operator()(std::size_t k, std::size_t j) const noexcept { return (*data_)[k * modes_ + j]; }
  std::span<const double> data() const noexcept { return *data_; }
  std::span<const double> row(std::size_t k) const noexcept {
    return std::span<const double>(*data_).subspan(k * modes_, modes_);
  }
  std::vector<double> to_vector() const { return *data_; }

  bool same_shape(const Field& other) const noexcept {
    return modes_ == other.modes_ && grid_ == other.grid_;
  }

  // Periodic shift by s nodes: result(x_k) = u(x_{k-s}).
  Field shifted(long s) const;
  double max_abs() const noexcept;
  // Plain l2 sum of squares times dx.
  double l2_squared() const noexcept;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(double c, const Field& a);
  friend Field operator-(const Field& a) { return -1.0 * a; }

 private:
  Grid1D grid_;
  std::size_t modes_;
  std::shared_ptr<const std::vector<double>> data_;
};

// a + c * b without an intermediate.
Field axpy(const Field& a, double c, const Field& b);
void require_same_shape(const Field& a, const Field& b, const char* where);

}  // namespace ulpar
