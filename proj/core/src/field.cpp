#include "ulpar/field.hpp"

#include <cmath>
#include <string>

#include "ulpar/error.hpp"

namespace ulpar {

Field::Field(const Grid1D& grid, std::size_t modes)
    : grid_(grid), modes_(modes), data_(std::make_shared<const std::vector<double>>(grid.size() * modes, 0.0)) {
  if (modes == 0) throw Error(ErrorCode::InvalidArgument, "field needs at least one mode");
}

Field::Field(const Grid1D& grid, std::size_t modes, std::vector<double> coeffs) : grid_(grid), modes_(modes) {
  if (modes == 0) throw Error(ErrorCode::InvalidArgument, "field needs at least one mode");
  if (coeffs.size() != grid.size() * modes)
    throw Error(ErrorCode::InvalidArgument, "coefficient array has " + std::to_string(coeffs.size()) +
                                                " entries, expected " + std::to_string(grid.size() * modes));
  for (double v : coeffs)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "field coefficients must be finite");
  data_ = std::make_shared<const std::vector<double>>(std::move(coeffs));
}

Field Field::from_function(const Grid1D& grid, std::size_t modes,
                           const std::function<double(double, std::size_t)>& f) {
  std::vector<double> c(grid.size() * modes);
  for (std::size_t k = 0; k < grid.size(); ++k)
    for (std::size_t j = 0; j < modes; ++j) c[k * modes + j] = f(grid.x(k), j);
  return Field(grid, modes, std::move(c));
}

Field Field::shifted(long s) const {
  const long n = static_cast<long>(nx());
  long r = s % n;
  if (r < 0) r += n;
  std::vector<double> c(size());
  const auto& d = *data_;
  for (long k = 0; k < n; ++k) {
    const long src = (k - r + n) % n;
    for (std::size_t j = 0; j < modes_; ++j) c[k * modes_ + j] = d[src * modes_ + j];
  }
  return Field(grid_, modes_, std::move(c));
}

double Field::max_abs() const noexcept {
  double m = 0.0;
  for (double v : *data_) m = std::max(m, std::abs(v));
  return m;
}

double Field::l2_squared() const noexcept {
  double s = 0.0;
  for (double v : *data_) s += v * v;
  return s * grid_.dx();
}

void require_same_shape(const Field& a, const Field& b, const char* where) {
  if (!a.same_shape(b)) throw Error(ErrorCode::GridMismatch, std::string(where) + ": fields live on different grids");
}

Field operator+(const Field& a, const Field& b) { return axpy(a, 1.0, b); }
Field operator-(const Field& a, const Field& b) { return axpy(a, -1.0, b); }

Field operator*(double c, const Field& a) {
  std::vector<double> out(a.data().begin(), a.data().end());
  for (double& v : out) v *= c;
  return Field(a.grid(), a.modes(), std::move(out));
}

Field axpy(const Field& a, double c, const Field& b) {
  require_same_shape(a, b, "axpy");
  auto x = a.data();
  auto y = b.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + c * y[i];
  return Field(a.grid(), a.modes(), std::move(out));
}

}  // namespace ulpar
