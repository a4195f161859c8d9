#pragma once

#include <cstdint>
#include <string>

namespace ulpar {

// Exact rational with positive denominator in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  // Nearest fraction with denominator at most max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den = 1000000);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

 private:
  std::int64_t num_, den_;
};

struct BetaWindow {
  bool nonempty = false;
  Rational lower, upper{1};
  bool cauchy_ok = false;
  bool gradient_ok = false;
  Rational sub_lower{1, 2}, sub_upper;
};

// Admissible beta in (alpha + (d/4) gamma/(1+gamma), 1); the gradient flow
// condition alpha + (d/4 + 1/2) gamma/(1+gamma) < 1; and the window
// (1/2, (1 + gamma/2)/(1 + gamma)).
BetaWindow admissible_beta(const Rational& alpha, const Rational& gamma, int d);

}  // namespace ulpar
