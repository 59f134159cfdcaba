#pragma once

// Interval arithmetic with outward rounding by epsilon inflation: every
// computed endpoint is pushed out by 4 units of roundoff plus twice the
// smallest normal double, which dominates the error of one correctly rounded
// (or faithfully rounded libm) operation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ccmorse::rigor {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
inline constexpr double kTiny = std::numeric_limits<double>::min();

/// x pushed away from zero-side toward -inf / +inf by the inflation model.
inline double round_down(double x) { return x - (4.0 * kUnitRoundoff * std::abs(x) + 2.0 * kTiny); }
inline double round_up(double x) { return x + (4.0 * kUnitRoundoff * std::abs(x) + 2.0 * kTiny); }

class Interval {
 public:
  Interval() = default;
  /// Point interval (exact; no inflation).
  Interval(double x) : lo_(x), hi_(x) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(x)) throw std::invalid_argument("interval endpoint is NaN");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw std::invalid_argument("invalid interval [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
  }

  /// [lo, hi] inflated outward; for results of floating-point operations.
  static Interval outward(double lo, double hi) { return {round_down(lo), round_up(hi)}; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
  double width() const { return hi_ - lo_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  std::pair<Interval, Interval> bisect() const {
    const double m = mid();
    return {Interval(lo_, m), Interval(m, hi_)};
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval::outward(a.lo() + b.lo(), a.hi() + b.hi());
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval::outward(a.lo() - b.hi(), a.hi() - b.lo());
}

inline Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  return Interval::outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
  const double p[4] = {a.lo() / b.lo(), a.lo() / b.hi(), a.hi() / b.lo(), a.hi() / b.hi()};
  return Interval::outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }

/// x^2, tighter than x * x when x straddles 0.
inline Interval sqr(const Interval& x) {
  const double a = x.lo() * x.lo(), b = x.hi() * x.hi();
  if (x.contains_zero()) return {0.0, round_up(std::max(a, b))};
  return {std::max(0.0, round_down(std::min(a, b))), round_up(std::max(a, b))};
}

inline Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw std::domain_error("sqrt of an interval with negative part");
  return {std::max(0.0, round_down(std::sqrt(x.lo()))), round_up(std::sqrt(x.hi()))};
}

/// x^p for x > 0 (monotone in x for fixed p).
inline Interval power(const Interval& x, double p) {
  if (p == 0.0) return Interval(1.0);
  if (p == 1.0) return x;
  if (!(x.lo() > 0.0)) throw std::domain_error("power needs a strictly positive base interval");
  const double a = std::pow(x.lo(), p), b = std::pow(x.hi(), p);
  return {std::max(0.0, round_down(std::min(a, b))), round_up(std::max(a, b))};
}

/// x^p over a box of bases and exponents. For x > 0 the map is monotone in
/// each argument separately, so the extremes sit at the four corners.
inline Interval power(const Interval& x, const Interval& p) {
  if (p.is_point()) return power(x, p.lo());
  if (!(x.lo() > 0.0)) throw std::domain_error("power needs a strictly positive base interval");
  const double c[4] = {std::pow(x.lo(), p.lo()), std::pow(x.lo(), p.hi()), std::pow(x.hi(), p.lo()),
                       std::pow(x.hi(), p.hi())};
  return {std::max(0.0, round_down(*std::min_element(c, c + 4))),
          round_up(*std::max_element(c, c + 4))};
}

/// Smallest interval containing both.
inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

}  // namespace ccmorse::rigor
