#pragma once

// Multi-start discovery and classification of critical points of f.

#include "ccmorse/core.hpp"
#include "ccmorse/linalg.hpp"
#include "ccmorse/morse.hpp"
#include "ccmorse/parallel.hpp"
#include "ccmorse/polygon.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmorse::search {

inline constexpr double kShapeTolerance = 1e-6;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double min_separation(const Vector& q) {
  double best = INFINITY;
  const Eigen::Index n = q.size() / 2;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      best = std::min(best, std::hypot(q[2 * i] - q[2 * j], q[2 * i + 1] - q[2 * j + 1]));
  return best;
}

}  // namespace detail

/// Seed of the k-th start in a survey seeded with `seed`.
inline std::uint64_t start_seed(std::uint64_t seed, std::uint64_t k) {
  return detail::splitmix64(detail::splitmix64(seed) ^ (k * 0xd1b54a32d192ed03ULL));
}

/// N points uniform in the annulus r_min <= |q| <= r_max, pairwise at least
/// 1e-3 apart.
inline Configuration random_start(std::uint64_t seed, std::size_t n, double r_min, double r_max) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("need 0 < r_min < r_max");
  if (n < 2) throw std::invalid_argument("need at least two bodies");
  std::mt19937_64 rng(detail::splitmix64(seed));
  Vector q(2 * static_cast<Eigen::Index>(n));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) {
      const double rho =
          std::sqrt(r_min * r_min + detail::unit_uniform(rng) * (r_max * r_max - r_min * r_min));
      const double phi = 2.0 * polygon::detail::kPi * detail::unit_uniform(rng);
      q[2 * i] = rho * std::cos(phi);
      q[2 * i + 1] = rho * std::sin(phi);
    }
    if (detail::min_separation(q) >= 1e-3) return Configuration(q);
  }
  throw std::runtime_error("random_start: rejection cap exceeded");
}

/// Gradient-norm threshold for a configuration to count as critical.
inline double critical_threshold(double f_value, double factor = 1e-10) {
  return factor * (1.0 + std::abs(f_value));
}

// ---------------------------------------------------------------------------
// Refinement

enum class RefineStatus { converged, not_converged, collision };

inline const char* to_string(RefineStatus s) {
  switch (s) {
    case RefineStatus::converged: return "converged";
    case RefineStatus::not_converged: return "not_converged";
    case RefineStatus::collision: return "collision";
  }
  return "unknown";
}

struct RefineOptions {
  int max_iter = 200;
  double tolerance = 1e-11;      // relative to 1 + |f|
  double collision_guard = 1e-6; // trial steps closer than this are rejected
};

struct RefineResult {
  RefineStatus status = RefineStatus::not_converged;
  Configuration configuration;
  int iterations = 0;
  double f_value = 0.0;
  double gradient_norm = 0.0;
  std::vector<double> residuals;  // |g| at the start and after each accepted step

  bool converged() const { return status == RefineStatus::converged; }
};

/// Levenberg-Marquardt on the gradient system g(q) = 0. The Jacobian is the
/// Hessian with the rotation direction lifted (H + mu v v^T, v the unit
/// rotation vector), so every nondegenerate critical point, saddles included,
/// is an attracting fixed point. A step is accepted only if |g| decreases.
inline RefineResult refine(const PotentialModel& model, const Configuration& start,
                           const RefineOptions& opts = {}) {
  ccmorse::detail::require_matching(model, start);
  Configuration current = start;
  Vector g = gradient_f(model, current);
  double gnorm = g.norm();
  double f = objective_f(model, current);
  RefineResult out{RefineStatus::not_converged, current, 0, f, gnorm, {gnorm}};

  double damping = 1e-8;
  bool last_reject_was_collision = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (gnorm < opts.tolerance * (1.0 + std::abs(f))) {
      out.status = RefineStatus::converged;
      break;
    }
    out.iterations = it + 1;
    Matrix h = hessian_f(model, current);
    Vector v = rotation_vector(current);
    const double vnorm = v.norm();
    const double mu = std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    if (vnorm > 0.0) h.noalias() += (mu / (vnorm * vnorm)) * v * v.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Vector& d = es.eigenvalues();
    const Vector gt = es.eigenvectors().transpose() * g;
    const double scale2 = d.cwiseAbs2().maxCoeff();

    bool accepted = false;
    while (!accepted) {
      if (damping > 1e12) break;
      const double lambda = damping * scale2;
      Vector step_t(d.size());
      for (Eigen::Index k = 0; k < d.size(); ++k) step_t[k] = -d[k] * gt[k] / (d[k] * d[k] + lambda);
      const Vector trial = current.coords() + es.eigenvectors() * step_t;
      if (!trial.allFinite() || detail::min_separation(trial) < opts.collision_guard) {
        last_reject_was_collision = true;
        damping *= 10.0;
        continue;
      }
      Configuration next(trial);
      Vector g_next = gradient_f(model, next);
      const double gn_next = g_next.norm();
      if (gn_next < gnorm) {
        current = std::move(next);
        g = std::move(g_next);
        gnorm = gn_next;
        f = objective_f(model, current);
        out.residuals.push_back(gnorm);
        damping = std::max(damping / 10.0, 1e-16);
        last_reject_was_collision = false;
        accepted = true;
      } else {
        last_reject_was_collision = false;
        damping *= 10.0;
      }
    }
    if (!accepted) {
      out.status = last_reject_was_collision ? RefineStatus::collision : RefineStatus::not_converged;
      break;
    }
  }
  if (out.status != RefineStatus::collision && gnorm < opts.tolerance * (1.0 + std::abs(f)))
    out.status = RefineStatus::converged;
  out.configuration = current;
  out.f_value = f;
  out.gradient_norm = gnorm;
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry of point sets under direct isometries

namespace detail {

inline std::vector<Vec2> centered_points(const Configuration& config) {
  std::vector<Vec2> pts = config.points();
  Vec2 c = Vec2::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  for (auto& p : pts) p -= c;
  return pts;
}

/// Permutation pi with |a_i - b_pi(i)| < tol for every i, if one exists.
inline std::optional<std::vector<int>> match_points(const std::vector<Vec2>& a,
                                                    const std::vector<Vec2>& b, double tol) {
  std::vector<int> perm(a.size(), -1);
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    int best = -1;
    double best_d = tol;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = (a[i] - b[j]).norm();
      if (dist < best_d) {
        best_d = dist;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) return std::nullopt;
    used[static_cast<std::size_t>(best)] = true;
    perm[i] = best;
  }
  return perm;
}

/// Rotations about the centroid carrying `src` onto `dst` as sets, each
/// reported as the induced permutation of indices.
inline std::vector<std::vector<int>> rotations_onto(const std::vector<Vec2>& src,
                                                    const std::vector<Vec2>& dst, double tol) {
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < src.size(); ++i)
    if (src[i].norm() > src[anchor].norm() + tol) anchor = i;
  const double anchor_r = src[anchor].norm();
  const double anchor_phi = std::atan2(src[anchor].y(), src[anchor].x());
  std::vector<std::vector<int>> out;
  for (std::size_t j = 0; j < dst.size(); ++j) {
    if (std::abs(dst[j].norm() - anchor_r) >= tol) continue;
    const double angle = std::atan2(dst[j].y(), dst[j].x()) - anchor_phi;
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec2> rotated(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
      rotated[i] = Vec2(c * src[i].x() - s * src[i].y(), s * src[i].x() + c * src[i].y());
    if (auto perm = match_points(rotated, dst, tol)) {
      if (std::find(out.begin(), out.end(), *perm) == out.end()) out.push_back(std::move(*perm));
    }
  }
  return out;
}

/// Sum over ordered triples (i, j, k) of w(r_ij, r_ik) * cross(q_j - q_i, q_k - q_i).
/// Invariant under relabeling and direct isometries, odd under reflection.
template <typename Weight>
double pseudoscalar(const std::vector<Vec2>& pts, Weight w, double& magnitude) {
  double sum = 0.0;
  magnitude = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vec2 dj = pts[j] - pts[i];
      const double rij = dj.norm();
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const Vec2 dk = pts[k] - pts[i];
        const double term = w(rij, dk.norm()) * (dj.x() * dk.y() - dj.y() * dk.x());
        sum += term;
        magnitude += std::abs(term);
      }
    }
  return sum;
}

}  // namespace detail

/// Number of labelings fixed by some direct isometry (the order of the
/// shape's rotational symmetry group acting on labels).
inline std::int64_t symmetry_order(const Configuration& config, double tol = kShapeTolerance) {
  const auto pts = detail::centered_points(config);
  return static_cast<std::int64_t>(detail::rotations_onto(pts, pts, tol).size());
}

/// True if the unlabeled shape coincides with its mirror image.
inline bool is_achiral(const Configuration& config, double tol = kShapeTolerance) {
  const auto pts = detail::centered_points(config);
  auto mirror = pts;
  for (auto& p : mirror) p.y() = -p.y();
  return !detail::rotations_onto(mirror, pts, tol).empty();
}

struct Signature {
  std::vector<double> distances;  // all N(N-1)/2 mutual distances, ascending
  int orientation = 0;            // 0 achiral, +-1 for the two mirror images

  friend bool operator<(const Signature& a, const Signature& b) {
    if (a.distances != b.distances) return a.distances < b.distances;
    return a.orientation < b.orientation;
  }
};

/// Shape key up to direct isometry: sorted mutual distances plus an
/// orientation mark. The mark is 0 for shapes congruent to their mirror
/// image; otherwise the sign of a reflection-odd pseudoscalar.
inline Signature canonical_signature(const Configuration& config, double tol = kShapeTolerance) {
  Signature sig;
  const std::size_t n = config.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sig.distances.push_back(mutual_distance(config, i, j));
  std::sort(sig.distances.begin(), sig.distances.end());
  if (n < 3 || is_achiral(config, tol)) return sig;

  const auto pts = detail::centered_points(config);
  const auto try_weight = [&](auto w) {
    double magnitude = 0.0;
    const double chi = detail::pseudoscalar(pts, w, magnitude);
    if (std::abs(chi) > 1e-9 * magnitude) return chi > 0.0 ? 1 : -1;
    return 0;
  };
  int mark = try_weight([](double a, double b) { return a * b * b; });
  if (mark == 0) mark = try_weight([](double a, double b) { return a * b * b * b * b; });
  if (mark == 0) mark = try_weight([](double a, double b) { return std::exp(a) * b; });
  if (mark == 0) mark = try_weight([](double a, double b) { return a / (1.0 + b * b * b); });
  // A chiral shape on which all four pseudoscalars vanish gets +1 and would
  // merge with its mirror image. None of the censuses here hit this.
  sig.orientation = mark == 0 ? 1 : mark;
  return sig;
}

inline bool same_shape(const Signature& a, const Signature& b, double tol = kShapeTolerance) {
  if (a.orientation != b.orientation || a.distances.size() != b.distances.size()) return false;
  for (std::size_t k = 0; k < a.distances.size(); ++k)
    if (std::abs(a.distances[k] - b.distances[k]) > tol) return false;
  return true;
}

struct Multiplicity {
  std::int64_t multiplicity = 0;
  std::int64_t symmetry_order = 0;
};

inline std::int64_t factorial(std::size_t n) {
  std::int64_t out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= static_cast<std::int64_t>(k);
  return out;
}

/// Equal masses assumed: symmetry order from the rotational symmetries of the
/// labeled shape, multiplicity N! / symmetry order.
inline Multiplicity multiplicity(const Configuration& config, double tol = kShapeTolerance) {
  Multiplicity out;
  out.symmetry_order = symmetry_order(config, tol);
  out.multiplicity = factorial(config.size()) / out.symmetry_order;
  return out;
}

inline Multiplicity multiplicity(const PotentialModel& model, const Configuration& config,
                                 double tol = kShapeTolerance) {
  if (!model.has_equal_masses())
    throw std::invalid_argument("multiplicity is only supported for equal masses");
  return multiplicity(config, tol);
}

/// Rotate so the body farthest from the origin sits on the positive x-axis
/// (ties within 1e-9 relative go to the smallest index).
inline Configuration canonical_frame(const Configuration& config) {
  double r_max = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) r_max = std::max(r_max, config.point(i).norm());
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Vec2 p = config.point(i);
    if (p.norm() >= r_max * (1.0 - 1e-9)) return config.rotated(-std::atan2(p.y(), p.x()));
  }
  return config;
}

// ---------------------------------------------------------------------------
// Classification

struct CriticalPoint {
  Configuration configuration;
  double f_value = 0.0;
  double gradient_norm = 0.0;
  std::vector<double> eigenvalues;
  int morse_index = 0;
  bool degenerate = false;
  Signature signature;
  std::int64_t multiplicity = 1;
  std::int64_t symmetry_order = 1;
};

/// Morse index = eigenvalues below the zero band; one zero-band eigenvalue is
/// the rotation mode, a second one marks the point degenerate. Multiplicity is
/// filled in for equal masses only (1 / 1 otherwise).
inline CriticalPoint classify(const PotentialModel& model, const Configuration& config,
                              double shape_tol = kShapeTolerance) {
  const Configuration framed = canonical_frame(config);
  const double f = objective_f(model, framed);
  const double gnorm = gradient_f(model, framed).norm();
  if (!(gnorm < critical_threshold(f)))
    throw std::runtime_error("classify: gradient norm " + std::to_string(gnorm) +
                             " is above the critical threshold");
  const SpectrumResult spectrum = hessian_spectrum(model, framed);
  CriticalPoint cp{framed, f, gnorm, spectrum.eigenvalues, spectrum.negative_count,
                   spectrum.zero_count >= 2, canonical_signature(framed, shape_tol), 1, 1};
  if (model.has_equal_masses()) {
    const Multiplicity m = multiplicity(framed, shape_tol);
    cp.multiplicity = m.multiplicity;
    cp.symmetry_order = m.symmetry_order;
  }
  return cp;
}

inline bool census_order(const CriticalPoint& a, const CriticalPoint& b) {
  if (a.morse_index != b.morse_index) return a.morse_index < b.morse_index;
  if (a.f_value != b.f_value) return a.f_value < b.f_value;
  return a.signature < b.signature;
}

inline std::vector<morse::CensusEntry> census_entries(const std::vector<CriticalPoint>& classes) {
  std::vector<morse::CensusEntry> out;
  for (const auto& c : classes) out.push_back({c.morse_index, c.multiplicity});
  return out;
}

// ---------------------------------------------------------------------------
// Survey

struct SurveyOptions {
  unsigned workers = 0;         // 0: default_worker_count()
  double r_min = 0.2;
  double r_max = 0.0;           // 0: 1.5 * limit polygon radius
  RefineOptions refine;
  double shape_tolerance = kShapeTolerance;
};

struct SurveyResult {
  std::vector<CriticalPoint> classes;
  std::size_t converged = 0;
  std::size_t diverged = 0;
  std::size_t collided = 0;
};

/// Adds configurations to a census, merging by shape. New shapes are
/// classified; the result is re-sorted.
inline void merge_into(const PotentialModel& model, std::vector<CriticalPoint>& classes,
                       const std::vector<Configuration>& extra,
                       double shape_tol = kShapeTolerance) {
  for (const auto& config : extra) {
    const Signature sig = canonical_signature(config, shape_tol);
    const bool known = std::any_of(classes.begin(), classes.end(), [&](const CriticalPoint& c) {
      return same_shape(c.signature, sig, shape_tol);
    });
    if (!known) classes.push_back(classify(model, config, shape_tol));
  }
  std::sort(classes.begin(), classes.end(), census_order);
}

/// Runs n_starts independent refinements from random_start(start_seed(seed, k)),
/// deduplicates converged points by shape (first start wins) and classifies
/// one representative per shape. Output depends only on (model, n_starts, seed).
inline SurveyResult survey(const PotentialModel& model, std::size_t n_starts, std::uint64_t seed,
                           const SurveyOptions& opts = {}) {
  if (n_starts < 1) throw std::invalid_argument("survey needs at least one start");
  if (!model.has_equal_masses())
    throw std::invalid_argument("survey deduplicates by unlabeled shape; equal masses only");
  const std::size_t n = model.size();
  const double r_max =
      opts.r_max > 0.0 ? opts.r_max : 1.5 * polygon::limit_radius(static_cast<int>(n));
  const unsigned workers = opts.workers ? opts.workers : default_worker_count();

  struct Outcome {
    RefineStatus status = RefineStatus::not_converged;
    std::optional<Configuration> config;
    Signature signature;
  };
  std::vector<Outcome> outcomes(n_starts);
  parallel_for(n_starts, workers, [&](std::size_t k) {
    const Configuration start = random_start(start_seed(seed, k), n, opts.r_min, r_max);
    RefineResult res = refine(model, start, opts.refine);
    Outcome& o = outcomes[k];
    o.status = res.status;
    if (res.converged()) {
      o.signature = canonical_signature(res.configuration, opts.shape_tolerance);
      o.config = std::move(res.configuration);
    }
  });

  SurveyResult out;
  std::vector<std::size_t> representatives;
  for (std::size_t k = 0; k < n_starts; ++k) {
    const Outcome& o = outcomes[k];
    switch (o.status) {
      case RefineStatus::converged: ++out.converged; break;
      case RefineStatus::collision: ++out.collided; continue;
      case RefineStatus::not_converged: ++out.diverged; continue;
    }
    const bool known = std::any_of(representatives.begin(), representatives.end(), [&](std::size_t r) {
      return same_shape(outcomes[r].signature, o.signature, opts.shape_tolerance);
    });
    if (!known) representatives.push_back(k);
  }

  std::vector<std::optional<CriticalPoint>> classified(representatives.size());
  parallel_for(representatives.size(), workers, [&](std::size_t c) {
    classified[c] = classify(model, *outcomes[representatives[c]].config, opts.shape_tolerance);
  });
  for (auto& c : classified) out.classes.push_back(std::move(*c));
  std::sort(out.classes.begin(), out.classes.end(), census_order);
  return out;
}

}  // namespace ccmorse::search
