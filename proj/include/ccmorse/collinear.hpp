#pragma once

// Collinear central configurations: one per ordering of the bodies on a line,
// found by Newton's method on f restricted to the line (where f is convex on
// each ordered cone), classified in the plane.

#include "ccmorse/core.hpp"
#include "ccmorse/linalg.hpp"
#include "ccmorse/search.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmorse::collinear {

inline constexpr std::size_t kMaxOrderingBodies = 10;

/// Left-to-right body order. Reversals describe the same configuration up to
/// a rotation by pi, so only orderings with front() < back() are canonical.
using Ordering = std::vector<int>;

inline bool is_canonical(const Ordering& ord) {
  if (ord.size() < 2) return false;
  std::vector<int> sorted = ord;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != static_cast<int>(k)) return false;
  return ord.front() < ord.back();
}

/// All n!/2 canonical orderings in lexicographic order.
inline std::vector<Ordering> enumerate_orderings(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two bodies");
  if (n > kMaxOrderingBodies)
    throw std::invalid_argument("ordering enumeration capped at n = " +
                                std::to_string(kMaxOrderingBodies));
  Ordering ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::vector<Ordering> out;
  do {
    if (ord.front() < ord.back()) out.push_back(ord);
  } while (std::next_permutation(ord.begin(), ord.end()));
  return out;
}

struct LineSolve {
  std::vector<double> positions;  // x coordinate of each body (indexed by body)
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  bool convex_path = true;        // restricted Hessian stayed positive definite
};

namespace detail {

inline double line_value(const PotentialModel& model, const Vector& x) {
  const double a = model.exponent();
  const Eigen::Index n = x.size();
  double inertia = 0.0, u = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mi = model.mass(static_cast<std::size_t>(i));
    inertia += mi * x[i] * x[i];
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double mm = mi * model.mass(static_cast<std::size_t>(j));
      const double d = std::abs(x[i] - x[j]);
      u += a == 2.0 ? -mm * std::log(d) : mm * std::pow(d, 2.0 - a) / (a - 2.0);
    }
  }
  return 0.5 * model.total_mass() * inertia + u;
}

inline Vector line_gradient(const PotentialModel& model, const Vector& x) {
  const double a = model.exponent();
  const double m_tot = model.total_mass();
  const Eigen::Index n = x.size();
  Vector g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mi = model.mass(static_cast<std::size_t>(i));
    double acc = m_tot * mi * x[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = x[i] - x[j];
      acc -= mi * model.mass(static_cast<std::size_t>(j)) * std::copysign(std::pow(std::abs(d), 1.0 - a), d);
    }
    g[i] = acc;
  }
  return g;
}

inline Matrix line_hessian(const PotentialModel& model, const Vector& x) {
  const double a = model.exponent();
  const double m_tot = model.total_mass();
  const Eigen::Index n = x.size();
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mi = model.mass(static_cast<std::size_t>(i));
    h(i, i) = m_tot * mi;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = (a - 1.0) * mi * model.mass(static_cast<std::size_t>(j)) *
                       std::pow(std::abs(x[i] - x[j]), -a);
      h(i, i) += w;
      h(i, j) = -w;
    }
  }
  return h;
}

inline bool respects(const Ordering& ord, const Vector& x) {
  for (std::size_t k = 0; k + 1 < ord.size(); ++k)
    if (!(x[ord[k]] < x[ord[k + 1]])) return false;
  return true;
}

inline void require_ordering(const PotentialModel& model, const Ordering& ord) {
  std::vector<int> sorted = ord;
  std::sort(sorted.begin(), sorted.end());
  bool ok = sorted.size() == model.size();
  for (std::size_t k = 0; ok && k < sorted.size(); ++k) ok = sorted[k] == static_cast<int>(k);
  if (!ok) throw std::invalid_argument("ordering is not a permutation of the bodies");
}

}  // namespace detail

/// Newton with step halving (keeping the ordering, then Armijo on the
/// restricted objective, which is convex on the cone) from an arbitrary start
/// inside the ordered cone.
inline LineSolve solve_on_line(const PotentialModel& model, const Ordering& ord,
                               std::vector<double> start, int max_iter = 500,
                               double tol = 1e-11) {
  detail::require_ordering(model, ord);
  const auto n = static_cast<Eigen::Index>(model.size());
  if (static_cast<Eigen::Index>(start.size()) != n)
    throw std::invalid_argument("start has the wrong number of bodies");
  Vector x = Eigen::Map<const Vector>(start.data(), n);
  if (!detail::respects(ord, x)) throw std::invalid_argument("start does not respect the ordering");

  LineSolve out;
  double fx = detail::line_value(model, x);
  Vector g = detail::line_gradient(model, x);
  for (int it = 0; it < max_iter && g.norm() >= tol; ++it) {
    const Matrix h = detail::line_hessian(model, x);
    // Jacobi scaling: near-collision starts make h badly conditioned
    const Vector d = h.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const Matrix hs = d.asDiagonal() * h * d.asDiagonal();
    Eigen::LLT<Matrix> llt(hs);
    if (llt.info() != Eigen::Success) out.convex_path = false;
    const Vector rhs = -(d.array() * g.array()).matrix();
    Vector step = d.asDiagonal() * (llt.info() == Eigen::Success ? Vector(llt.solve(rhs))
                                                                 : Vector(hs.ldlt().solve(rhs)));
    double slope = g.dot(step);
    if (!(slope < 0.0)) {
      step = -(d.array().square() * g.array()).matrix();
      slope = g.dot(step);
    }
    double t = 1.0;
    Vector trial = x + step;
    double f_trial = 0.0;
    for (; t > 1e-12; t *= 0.5) {
      trial = x + t * step;
      if (!detail::respects(ord, trial)) continue;
      f_trial = detail::line_value(model, trial);
      // slack of a few ulps so the final Newton steps are not rejected on rounding
      if (f_trial <= fx + 1e-4 * t * slope + 8e-16 * std::abs(fx)) break;
    }
    if (!(t > 1e-12)) break;
    x = trial;
    fx = f_trial;
    g = detail::line_gradient(model, x);
    out.iterations = it + 1;
  }
  out.gradient_norm = g.norm();
  out.converged = out.gradient_norm < tol;
  out.positions.assign(x.data(), x.data() + n);
  return out;
}

/// Deterministic start: equally spaced points on [-N/2, N/2] in ordering order.
inline std::vector<double> default_start(const Ordering& ord) {
  const std::size_t n = ord.size();
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k)
    x[static_cast<std::size_t>(ord[k])] =
        -0.5 * static_cast<double>(n) + static_cast<double>(n) * static_cast<double>(k) /
                                            static_cast<double>(n - 1);
  return x;
}

/// The collinear central configuration for `ord`, bodies on the x-axis.
inline Configuration collinear_solve(const PotentialModel& model, const Ordering& ord) {
  const LineSolve s = solve_on_line(model, ord, default_start(ord));
  if (!s.converged)
    throw std::runtime_error("collinear_solve: no convergence, |g| = " +
                             std::to_string(s.gradient_norm));
  Vector q = Vector::Zero(2 * static_cast<Eigen::Index>(s.positions.size()));
  for (std::size_t i = 0; i < s.positions.size(); ++i) q[2 * i] = s.positions[i];
  return Configuration(q);
}

/// Planar Morse index (negative eigenvalues of the full Hessian).
inline int collinear_index(const PotentialModel& model, const Configuration& config) {
  ccmorse::detail::require_matching(model, config);
  for (std::size_t i = 0; i < config.size(); ++i)
    if (std::abs(config.point(i).y()) >= 1e-12)
      throw std::invalid_argument("configuration is not on the x-axis");
  const double f = objective_f(model, config);
  if (!(gradient_f(model, config).norm() < search::critical_threshold(f)))
    throw std::runtime_error("collinear_index: configuration is not critical");
  return hessian_spectrum(model, config).negative_count;
}

struct CollinearClass {
  Ordering ordering;
  Configuration configuration;
  double f_value;
  int morse_index;
};

/// Every canonical ordering solved and indexed; sorted by ordering.
inline std::vector<CollinearClass> collinear_census(const PotentialModel& model) {
  std::vector<CollinearClass> out;
  for (const Ordering& ord : enumerate_orderings(model.size())) {
    Configuration c = collinear_solve(model, ord);
    const double f = objective_f(model, c);
    const int idx = collinear_index(model, c);
    out.push_back({ord, std::move(c), f, idx});
  }
  return out;
}

/// Configurations for merging into a survey census: one per distinct shape.
inline std::vector<Configuration> collinear_shapes(const PotentialModel& model) {
  std::vector<Configuration> out;
  for (auto& c : collinear_census(model)) out.push_back(std::move(c.configuration));
  return out;
}

}  // namespace ccmorse::collinear
