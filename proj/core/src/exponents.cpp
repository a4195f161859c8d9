#include "ulpar/exponents.hpp"

#include <cmath>
#include <numeric>

#include "ulpar/error.hpp"

namespace ulpar {
namespace {

Rational make(__int128 n, __int128 d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (d < 0) n = -n, d = -d;
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) n /= a, d /= a;
  if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw Error(ErrorCode::InvalidArgument, "rational overflow");
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den_ < 0) num_ = -num_, den_ = -den_;
  const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) num_ /= g, den_ /= g;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot approximate a non-finite value");
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    const std::int64_t p2 = ai * p1 + p0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return Rational(p1, q1);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

BetaWindow admissible_beta(const Rational& alpha, const Rational& gamma, int d) {
  if (alpha < Rational(0) || !(alpha < Rational(1)))
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1)");
  if (gamma < Rational(0)) throw Error(ErrorCode::InvalidArgument, "gamma must be nonnegative");
  if (d < 1 || d > 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 1, 2 or 3");
  const Rational one(1);
  const Rational g = gamma / (one + gamma);
  BetaWindow w;
  w.lower = alpha + Rational(d, 4) * g;
  w.upper = one;
  w.nonempty = w.lower < one;
  w.cauchy_ok = w.nonempty;
  w.gradient_ok = alpha + (Rational(d, 4) + Rational(1, 2)) * g < one;
  w.sub_lower = Rational(1, 2);
  w.sub_upper = (one + gamma / Rational(2)) / (one + gamma);
  return w;
}

}  // namespace ulpar
