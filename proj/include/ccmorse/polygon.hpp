#pragma once

// Spectral theory of the equal-mass regular N-gon.
//
// In polar coordinates (r_0..r_{N-1}, theta_0..theta_{N-1}) the Hessian of f at
// the polygon has circulant blocks, and the discrete Fourier transform splits
// it into N two-by-two Hermitian blocks
//
//   E_i = [[ P_i,  i s_i ],
//          [ -i s_i, Q_i ]],   i = 0..N-1,
//
// whose eigenvalues are lambda_(N,i,+-) = (P + Q +- sqrt((P - Q)^2 + 4 s^2)) / 2.
// These are eigenvalues of the polar Hessian; the theta rows carry a factor of
// r, so the Cartesian Hessian has the congruent blocks
// [[P, s/r], [s/r, Q/r^2]] (same signs, different magnitudes).

#include "ccmorse/core.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmorse::polygon {

namespace detail {

inline constexpr double kPi = boost::math::constants::pi<double>();

inline void require_polygon(int n, double a) {
  if (n < 2) throw std::invalid_argument("polygon needs n >= 2");
  if (!(a >= 2.0) || !std::isfinite(a)) throw std::invalid_argument("exponent must satisfy A >= 2");
}

inline void require_frequency(int n, int i) {
  if (i < 0 || i >= n)
    throw std::out_of_range("frequency index " + std::to_string(i) + " outside [0, " +
                            std::to_string(n - 1) + "]");
}

}  // namespace detail

/// 2 sin(pi j / n): distance between vertices 0 and j of the unit polygon.
inline double unit_polygon_distance(int n, int j) {
  if (n < 2) throw std::invalid_argument("polygon needs n >= 2");
  if (j < 1 || j > n - 1) throw std::out_of_range("vertex offset must lie in [1, n-1]");
  return 2.0 * std::sin(detail::kPi * j / n);
}

/// Circumradius of the critical regular polygon: (sum_j u_j^(2-A) / 2N)^(1/A).
inline double polygon_radius(int n, double a) {
  detail::require_polygon(n, a);
  double sum = 0.0;
  for (int j = 1; j < n; ++j) sum += std::pow(unit_polygon_distance(n, j), 2.0 - a);
  return std::pow(sum / (2.0 * n), 1.0 / a);
}

/// Limit radius as A -> infinity; nearest neighbours at unit distance.
inline double limit_radius(int n) {
  if (n < 2) throw std::invalid_argument("polygon needs n >= 2");
  return 1.0 / (2.0 * std::sin(detail::kPi / n));
}

/// Equal masses on the vertices of the critical polygon, body i at angle 2 pi i / n.
inline Configuration polygon_configuration(int n, double a) {
  const double r = polygon_radius(n, a);
  Vector q(2 * n);
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * detail::kPi * i / n;
    q[2 * i] = r * std::cos(theta);
    q[2 * i + 1] = r * std::sin(theta);
  }
  return Configuration(std::move(q));
}

struct BlockDiagonal {
  double p = 0.0;  // radial-radial
  double q = 0.0;  // angular-angular
  double s = 0.0;  // imaginary part of the radial-angular coupling
};

/// Diagonals of the Fourier-transformed polar Hessian at frequency i, from the
/// half-range sums over j = 1..floor((n-1)/2) plus the antipodal j = n/2 term
/// for even n.
inline BlockDiagonal block_diagonals(int n, double a, int i) {
  detail::require_polygon(n, a);
  detail::require_frequency(n, i);
  const double r = polygon_radius(n, a);
  const double theta = 2.0 * detail::kPi / n;
  const int half = (n - 1) / 2;

  double sum_p = 0.0, sum_q = 0.0, sum_s = 0.0;
  for (int j = 1; j <= half; ++j) {
    const double u = unit_polygon_distance(n, j);
    const double u2 = u * u;
    const double ua = std::pow(u, -a);
    // reduce i*j mod n before the trig calls so large products stay exact
    const int ij = static_cast<int>((static_cast<std::int64_t>(i) * j) % n);
    const double cij = std::cos(theta * ij);
    const double sij = std::sin(theta * ij);
    const double cj = std::cos(theta * j);
    const double sj = std::sin(theta * j);
    sum_p += ua * (u2 * (0.5 * a + 1.0 + (0.5 * a - 1.0) * cij) - 2.0 + 2.0 * cij);
    sum_q += ua * (1.0 - cij) * (0.5 * (a - 2.0) * (1.0 + cj) + 1.0);
    sum_s += ua * sij * sj;
  }

  BlockDiagonal out;
  out.p = std::pow(r, -a) * sum_p;
  out.q = 2.0 * std::pow(r, 2.0 - a) * sum_q;
  out.s = (a - 2.0) * std::pow(r, 1.0 - a) * sum_s;
  if (n % 2 == 0) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    out.p += std::pow(2.0 * r, -a) * (sign * (a - 1.0) + (a + 1.0));
    out.q += std::pow(r, 2.0 - a) * std::pow(2.0, -a) * (1.0 - sign);
  }
  return out;
}

struct EigenvaluePair {
  double plus = 0.0;
  double minus = 0.0;
};

namespace detail {

inline EigenvaluePair hermitian_pair(double p, double q, double s) {
  const double mean = 0.5 * (p + q);
  const double half_gap = 0.5 * std::sqrt((p - q) * (p - q) + 4.0 * s * s);
  EigenvaluePair out{mean + half_gap, mean - half_gap};
  // the smaller root loses digits when p*q + s^2 is tiny; use the product
  const double det = p * q - s * s;
  if (out.plus != 0.0 && std::abs(out.minus) < 1e-3 * std::abs(out.plus))
    out.minus = det / out.plus;
  return out;
}

}  // namespace detail

/// lambda_(N,i,+-) of the polar Hessian block E_i.
inline EigenvaluePair eigenvalue_pair(int n, double a, int i) {
  const BlockDiagonal d = block_diagonals(n, a, i);
  return detail::hermitian_pair(d.p, d.q, d.s);
}

/// Same block expressed in Cartesian radial/tangential unit vectors.
inline EigenvaluePair cartesian_eigenvalue_pair(int n, double a, int i) {
  const BlockDiagonal d = block_diagonals(n, a, i);
  const double r = polygon_radius(n, a);
  return detail::hermitian_pair(d.p, d.q / (r * r), d.s / r);
}

struct PolygonSpectrum {
  int n_bodies = 0;
  double exponent = 0.0;
  double radius = 0.0;
  std::vector<BlockDiagonal> diagonals;
  std::vector<EigenvaluePair> pairs;            // polar frame
  std::vector<EigenvaluePair> cartesian_pairs;  // Cartesian frame
};

inline PolygonSpectrum polygon_spectrum(int n, double a) {
  detail::require_polygon(n, a);
  PolygonSpectrum out;
  out.n_bodies = n;
  out.exponent = a;
  out.radius = polygon_radius(n, a);
  const double r2 = out.radius * out.radius;
  for (int i = 0; i < n; ++i) {
    const BlockDiagonal d = block_diagonals(n, a, i);
    out.diagonals.push_back(d);
    out.pairs.push_back(detail::hermitian_pair(d.p, d.q, d.s));
    out.cartesian_pairs.push_back(detail::hermitian_pair(d.p, d.q / r2, d.s / out.radius));
  }
  return out;
}

using Rational = boost::rational<std::int64_t>;

struct VortexForms {
  Rational p;
  Rational q;
};

/// Exact A = 2 diagonals: P = (2 - i) N + (i^2 - i) N / (N - 1),
/// Q = i (N - i) / 2, a half-integer for even N and odd i. The coupling
/// vanishes at A = 2.
inline VortexForms vortex_closed_forms(int n, int i) {
  if (n < 2) throw std::invalid_argument("polygon needs n >= 2");
  detail::require_frequency(n, i);
  const std::int64_t big_n = n, k = i;
  VortexForms out;
  out.p = Rational((2 - k) * big_n) + Rational((k * k - k) * big_n, big_n - 1);
  out.q = Rational(k * (big_n - k), 2);
  return out;
}

struct PolygonIndex {
  int index = 0;
  bool degenerate = false;
  int near_zero = 0;  // eigenvalues inside the degeneracy band, rotation included
};

/// Negative count over all 2N block eigenvalues. The rotation zero
/// lambda_(N,0,-) is expected; any further eigenvalue with
/// |lambda| < 1e-9 max(1, lambda_max) flags the polygon as degenerate.
inline PolygonIndex polygon_morse_index(int n, double a) {
  if (n < 3) throw std::invalid_argument("polygon Morse index needs n >= 3");
  const PolygonSpectrum spec = polygon_spectrum(n, a);
  double lambda_max = 0.0;
  for (const auto& pr : spec.pairs) lambda_max = std::max(lambda_max, pr.plus);
  const double tol = 1e-9 * std::max(1.0, lambda_max);
  PolygonIndex out;
  for (const auto& pr : spec.pairs)
    for (double x : {pr.plus, pr.minus}) {
      if (std::abs(x) < tol)
        ++out.near_zero;
      else if (x < 0.0)
        ++out.index;
    }
  out.degenerate = out.near_zero > 1;
  return out;
}

/// The eigenvalue whose sign change marks the bifurcation A_N.
inline double bifurcation_eigenvalue(int n, double a) {
  return eigenvalue_pair(n, a, 2).minus;
}

struct SignChange {
  double lo = 0.0;
  double hi = 0.0;
};

/// All sign changes of lambda_(n,2,-) on a uniform grid over [a_lo, a_hi].
inline std::vector<SignChange> bifurcation_sign_changes(int n, double a_lo, double a_hi,
                                                        double step) {
  if (n < 3) throw std::invalid_argument("bifurcation scan needs n >= 3");
  if (!(a_lo >= 2.0) || !(a_hi > a_lo) || !(step > 0.0))
    throw std::invalid_argument("invalid scan range");
  std::vector<SignChange> out;
  double prev_a = a_lo;
  double prev = bifurcation_eigenvalue(n, prev_a);
  for (int k = 1;; ++k) {
    const double a = std::min(a_lo + k * step, a_hi);
    const double val = bifurcation_eigenvalue(n, a);
    if ((prev > 0.0 && val <= 0.0) || (prev < 0.0 && val >= 0.0)) out.push_back({prev_a, a});
    prev_a = a;
    prev = val;
    if (a >= a_hi) break;
  }
  return out;
}

struct Bifurcation {
  double exponent = 0.0;  // midpoint of the final bracket
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  bool auto_bracketed = false;
};

/// Bisection on the sign of lambda_(n,2,-). If [a_lo, a_hi] has no sign change,
/// the first sign change on a 0.25-step scan of [2 + 1e-6, 40] is used instead.
inline Bifurcation find_bifurcation_bracket(int n, double a_lo, double a_hi, double tol) {
  if (n < 3) throw std::invalid_argument("bifurcation search needs n >= 3");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(a_lo >= 2.0) || !(a_hi > a_lo) || !std::isfinite(a_hi))
    throw std::invalid_argument("invalid bracket");

  Bifurcation out;
  double lo = a_lo, hi = a_hi;
  double f_lo = bifurcation_eigenvalue(n, lo);
  double f_hi = bifurcation_eigenvalue(n, hi);
  if (f_lo == 0.0) return {lo, lo, lo, 0, false};
  if (f_hi == 0.0) return {hi, hi, hi, 0, false};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    const auto changes = bifurcation_sign_changes(n, 2.0 + 1e-6, 40.0, 0.25);
    if (changes.empty())
      throw std::runtime_error("no sign change of lambda_(" + std::to_string(n) +
                               ",2,-) found for A in [2, 40]");
    lo = changes.front().lo;
    hi = changes.front().hi;
    f_lo = bifurcation_eigenvalue(n, lo);
    out.auto_bracketed = true;
  }
  int it = 0;
  for (; it < 200 && hi - lo >= tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = bifurcation_eigenvalue(n, mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.exponent = 0.5 * (lo + hi);
  out.iterations = it;
  return out;
}

inline double find_bifurcation(int n, double a_lo, double a_hi, double tol) {
  return find_bifurcation_bracket(n, a_lo, a_hi, tol).exponent;
}

/// Rational fit A_N ~ (2N^3 - 2.46N^2 + 0.713N - 91.5) / (N^3 - 3.3N^2 - 17.17N + 58.5).
inline double pade_estimate(int n) {
  if (n < 5 || n > 200) throw std::out_of_range("rational fit only covers 5 <= n <= 200");
  const double x = n;
  const double num = 2.0 * x * x * x - 2.46 * x * x + 0.713 * x - 91.5;
  const double den = x * x * x - 3.3 * x * x - 17.17 * x + 58.5;
  return num / den;
}

}  // namespace ccmorse::polygon
