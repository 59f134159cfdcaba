#pragma once

// Potential model, planar configurations and the objective
//
//   f = M I / 2 + U / (A - 2),   U = sum_{i<k} m_i m_k r_ik^(2 - A)
//
// together with its Cartesian gradient and Hessian. At A = 2 the
// logarithmic potential is used with f = M I / 2 - sum m_i m_k log r_ik, so
// that the gradient
//
//   g_i = M m_i q_i - sum_{j != i} m_i m_j r_ij^(-A) (q_i - q_j)
//
// is the same expression for every A >= 2.
//
// Coordinates are stored interleaved: (x_0, y_0, x_1, y_1, ...).

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmorse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;

/// Raised when a configuration lies on (or a computation reaches) the
/// collision set.
class CollisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Pairwise distances below this are treated as collisions.
inline constexpr double kCollisionThreshold = 1e-12;

class PotentialModel {
 public:
  PotentialModel(double exponent, std::vector<double> masses)
      : exponent_(exponent), masses_(std::move(masses)) {
    if (!(exponent_ >= 2.0) || !std::isfinite(exponent_))
      throw std::invalid_argument("potential exponent must satisfy A >= 2");
    if (masses_.size() < 2)
      throw std::invalid_argument("at least two bodies are required");
    for (double m : masses_)
      if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("masses must be positive and finite");
    total_mass_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
  }

  static PotentialModel equal_masses(std::size_t n, double exponent) {
    return PotentialModel(exponent, std::vector<double>(n, 1.0));
  }

  double exponent() const { return exponent_; }
  const std::vector<double>& masses() const { return masses_; }
  double mass(std::size_t i) const { return masses_.at(i); }
  double total_mass() const { return total_mass_; }
  std::size_t size() const { return masses_.size(); }
  bool is_logarithmic() const { return exponent_ == 2.0; }

  bool has_equal_masses() const {
    for (double m : masses_)
      if (m != masses_.front()) return false;
    return true;
  }

 private:
  double exponent_;
  std::vector<double> masses_;
  double total_mass_ = 0.0;
};

/// N planar bodies, guaranteed off the collision set.
class Configuration {
 public:
  explicit Configuration(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 4 || coords_.size() % 2 != 0)
      throw std::invalid_argument(
          "configuration needs an even number (>= 4) of coordinates");
    if (!coords_.allFinite())
      throw std::invalid_argument("configuration has non-finite coordinates");
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if ((point(i) - point(j)).norm() < kCollisionThreshold)
          throw CollisionError("bodies " + std::to_string(i) + " and " +
                               std::to_string(j) + " coincide");
  }

  explicit Configuration(const std::vector<Vec2>& points)
      : Configuration(flatten(points)) {}

  std::size_t size() const { return static_cast<std::size_t>(coords_.size() / 2); }
  const Vector& coords() const { return coords_; }
  Vec2 point(std::size_t i) const { return {coords_[2 * i], coords_[2 * i + 1]}; }

  std::vector<Vec2> points() const {
    std::vector<Vec2> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = point(i);
    return out;
  }

  double min_separation() const {
    double best = INFINITY;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        best = std::min(best, (point(i) - point(j)).norm());
    return best;
  }

  /// Rigid rotation about the origin.
  Configuration rotated(double angle) const {
    const double c = std::cos(angle), s = std::sin(angle);
    Vector out(coords_.size());
    for (std::size_t i = 0; i < size(); ++i) {
      const double x = coords_[2 * i], y = coords_[2 * i + 1];
      out[2 * i] = c * x - s * y;
      out[2 * i + 1] = s * x + c * y;
    }
    return Configuration(std::move(out));
  }

  Configuration translated(const Vec2& shift) const {
    Vector out = coords_;
    for (std::size_t i = 0; i < size(); ++i) {
      out[2 * i] += shift.x();
      out[2 * i + 1] += shift.y();
    }
    return Configuration(std::move(out));
  }

  /// Mirror image across the x-axis.
  Configuration reflected() const {
    Vector out = coords_;
    for (std::size_t i = 0; i < size(); ++i) out[2 * i + 1] = -out[2 * i + 1];
    return Configuration(std::move(out));
  }

 private:
  static Vector flatten(const std::vector<Vec2>& points) {
    Vector v(2 * static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      v[2 * i] = points[i].x();
      v[2 * i + 1] = points[i].y();
    }
    return v;
  }

  Vector coords_;
};

namespace detail {

inline void require_matching(const PotentialModel& model, const Configuration& config) {
  if (model.size() != config.size())
    throw std::invalid_argument("model has " + std::to_string(model.size()) +
                                " bodies but configuration has " +
                                std::to_string(config.size()));
}

}  // namespace detail

inline double mutual_distance(const Configuration& config, std::size_t i, std::size_t j) {
  if (i >= config.size() || j >= config.size())
    throw std::out_of_range("body index out of range");
  if (i == j) throw std::invalid_argument("mutual distance needs two distinct bodies");
  return (config.point(i) - config.point(j)).norm();
}

inline Vec2 center_of_mass(const PotentialModel& model, const Configuration& config) {
  detail::require_matching(model, config);
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < config.size(); ++i) c += model.mass(i) * config.point(i);
  return c / model.total_mass();
}

/// I = sum m_i |q_i|^2, measured from the origin.
inline double moment_of_inertia(const PotentialModel& model, const Configuration& config) {
  detail::require_matching(model, config);
  double inertia = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i)
    inertia += model.mass(i) * config.point(i).squaredNorm();
  return inertia;
}

/// U for A > 2, or sum m_i m_k log r_ik for A = 2.
inline double potential_energy(const PotentialModel& model, const Configuration& config) {
  detail::require_matching(model, config);
  const double a = model.exponent();
  const std::size_t n = config.size();
  double u = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = (config.point(i) - config.point(j)).norm();
      const double mm = model.mass(i) * model.mass(j);
      u += model.is_logarithmic() ? mm * std::log(r) : mm * std::pow(r, 2.0 - a);
    }
  return u;
}

inline double objective_f(const PotentialModel& model, const Configuration& config) {
  const double half_mi = 0.5 * model.total_mass() * moment_of_inertia(model, config);
  const double u = potential_energy(model, config);
  if (model.is_logarithmic()) return half_mi - u;
  return half_mi + u / (model.exponent() - 2.0);
}

inline Vector gradient_f(const PotentialModel& model, const Configuration& config) {
  detail::require_matching(model, config);
  const std::size_t n = config.size();
  const double a = model.exponent();
  const double big_m = model.total_mass();
  const Vector& q = config.coords();
  Vector g(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g[2 * i] = big_m * model.mass(i) * q[2 * i];
    g[2 * i + 1] = big_m * model.mass(i) * q[2 * i + 1];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = q[2 * i] - q[2 * j];
      const double dy = q[2 * i + 1] - q[2 * j + 1];
      const double r2 = dx * dx + dy * dy;
      const double w = model.mass(i) * model.mass(j) * std::pow(r2, -0.5 * a);
      g[2 * i] -= w * dx;
      g[2 * i + 1] -= w * dy;
      g[2 * j] += w * dx;
      g[2 * j + 1] += w * dy;
    }
  return g;
}

/// Off-diagonal 2x2 blocks are m_i m_j r^-A (I - A d d^T / r^2) with
/// d = q_i - q_j; diagonal blocks are M m_i I minus the row sum of those.
inline Matrix hessian_f(const PotentialModel& model, const Configuration& config) {
  detail::require_matching(model, config);
  const std::size_t n = config.size();
  const double a = model.exponent();
  const Vector& q = config.coords();
  Matrix h = Matrix::Zero(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    h(2 * i, 2 * i) = model.total_mass() * model.mass(i);
    h(2 * i + 1, 2 * i + 1) = model.total_mass() * model.mass(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = q[2 * i] - q[2 * j];
      const double dy = q[2 * i + 1] - q[2 * j + 1];
      const double r2 = dx * dx + dy * dy;
      const double w = model.mass(i) * model.mass(j) * std::pow(r2, -0.5 * a);
      const double wa = w * a / r2;
      const double bxx = w - wa * dx * dx;
      const double byy = w - wa * dy * dy;
      const double bxy = -wa * dx * dy;
      h(2 * i, 2 * j) = h(2 * j, 2 * i) = bxx;
      h(2 * i + 1, 2 * j + 1) = h(2 * j + 1, 2 * i + 1) = byy;
      h(2 * i, 2 * j + 1) = h(2 * j + 1, 2 * i) = bxy;
      h(2 * i + 1, 2 * j) = h(2 * j, 2 * i + 1) = bxy;
      for (std::size_t k : {i, j}) {
        h(2 * k, 2 * k) -= bxx;
        h(2 * k + 1, 2 * k + 1) -= byy;
        h(2 * k, 2 * k + 1) -= bxy;
        h(2 * k + 1, 2 * k) -= bxy;
      }
    }
  return h;
}

/// Infinitesimal rotation about the origin: v_i = (-y_i, x_i).
inline Vector rotation_vector(const Configuration& config) {
  const Vector& q = config.coords();
  Vector v(q.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    v[2 * i] = -q[2 * i + 1];
    v[2 * i + 1] = q[2 * i];
  }
  return v;
}

// Central-difference oracles built from objective_f alone.

inline Vector finite_difference_gradient(const PotentialModel& model,
                                         const Configuration& config, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const Vector& q = config.coords();
  Vector g(q.size());
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    Vector plus = q, minus = q;
    plus[k] += step;
    minus[k] -= step;
    g[k] = (objective_f(model, Configuration(plus)) -
            objective_f(model, Configuration(minus))) /
           (2.0 * step);
  }
  return g;
}

inline Matrix finite_difference_hessian(const PotentialModel& model,
                                        const Configuration& config, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const Vector& q = config.coords();
  const Eigen::Index dim = q.size();
  auto f_at = [&](Eigen::Index k, double dk, Eigen::Index l, double dl) {
    Vector p = q;
    p[k] += dk;
    p[l] += dl;
    return objective_f(model, Configuration(p));
  };
  Matrix h(dim, dim);
  const double f0 = objective_f(model, config);
  for (Eigen::Index k = 0; k < dim; ++k) {
    h(k, k) = (f_at(k, 2 * step, k, 0.0) - 2.0 * f0 + f_at(k, -2 * step, k, 0.0)) /
              (4.0 * step * step);
    for (Eigen::Index l = k + 1; l < dim; ++l) {
      const double v = (f_at(k, step, l, step) - f_at(k, step, l, -step) -
                        f_at(k, -step, l, step) + f_at(k, -step, l, -step)) /
                       (4.0 * step * step);
      h(k, l) = h(l, k) = v;
    }
  }
  return h;
}

}  // namespace ccmorse
