#pragma once

// Interval certification on the gradient system g(q) = 0 of f: exclusion of
// solution-free boxes, the Shary full-rank test on interval Jacobians, and a
// deterministic branch-and-prune driver.
//
// Boxes live in the 2N Cartesian coordinates, optionally with the exponent A
// as one more coordinate. Rotations are fixed by the slice y_0 = 0, x_0 >= 0;
// the Jacobian used for rank certification is the Hessian with the y_0 column
// removed.

#include "ccmorse/core.hpp"
#include "ccmorse/interval.hpp"
#include "ccmorse/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmorse::rigor {

/// Margin for the singular-value comparison, relative to max |mid|.
inline constexpr double kSvdMargin = 1e-8;

struct IntervalBox {
  std::vector<Interval> coords;     // x_0, y_0, x_1, y_1, ...
  std::optional<Interval> exponent; // A, when it is a box coordinate

  std::size_t bodies() const { return coords.size() / 2; }
  std::size_t dimension() const { return coords.size() + (exponent ? 1 : 0); }

  const Interval& operator[](std::size_t k) const {
    return k < coords.size() ? coords[k] : *exponent;
  }
  Interval& operator[](std::size_t k) { return k < coords.size() ? coords[k] : *exponent; }

  static IntervalBox point(const Configuration& config) {
    IntervalBox b;
    for (Eigen::Index k = 0; k < config.coords().size(); ++k) b.coords.emplace_back(config.coords()[k]);
    return b;
  }

  bool contains(const Vector& q) const {
    if (static_cast<std::size_t>(q.size()) != coords.size()) return false;
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (!coords[k].contains(q[static_cast<Eigen::Index>(k)])) return false;
    return true;
  }

  /// Coordinate of largest width (lowest index on ties).
  std::size_t widest() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < dimension(); ++k)
      if ((*this)[k].width() > (*this)[best].width()) best = k;
    return best;
  }

  std::pair<IntervalBox, IntervalBox> bisect() const {
    const std::size_t k = widest();
    auto [left, right] = (*this)[k].bisect();
    IntervalBox a = *this, b = *this;
    a[k] = left;
    b[k] = right;
    return {a, b};
  }

  double volume() const {
    double v = 1.0;
    for (std::size_t k = 0; k < dimension(); ++k) {
      const double w = (*this)[k].width();
      if (w > 0.0) v *= w;
    }
    return v;
  }

  friend bool operator<(const IntervalBox& a, const IntervalBox& b) {
    for (std::size_t k = 0; k < std::min(a.dimension(), b.dimension()); ++k) {
      if (a[k].lo() != b[k].lo()) return a[k].lo() < b[k].lo();
      if (a[k].hi() != b[k].hi()) return a[k].hi() < b[k].hi();
    }
    return a.dimension() < b.dimension();
  }
  friend bool operator==(const IntervalBox&, const IntervalBox&) = default;
};

class IntervalMatrix {
 public:
  IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Interval& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Matrix mid() const {
    Matrix m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
    return m;
  }

  /// Rounded up so that [mid - rad, mid + rad] covers every entry.
  Matrix rad() const {
    Matrix r(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Interval& x = (*this)(i, j);
        const double m = x.mid();
        r(i, j) = round_up(std::max(x.hi() - m, m - x.lo()));
      }
    return r;
  }

  static IntervalMatrix from_mid_rad(const Matrix& mid, const Matrix& rad) {
    IntervalMatrix m(static_cast<std::size_t>(mid.rows()), static_cast<std::size_t>(mid.cols()));
    for (Eigen::Index i = 0; i < mid.rows(); ++i)
      for (Eigen::Index j = 0; j < mid.cols(); ++j)
        m(i, j) = Interval::outward(mid(i, j) - rad(i, j), mid(i, j) + rad(i, j));
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Interval> e_;
};

namespace detail {

inline Interval exponent_of(const PotentialModel& model, const IntervalBox& box) {
  if (box.exponent) {
    if (box.exponent->lo() < 2.0) throw std::invalid_argument("exponent interval must lie in [2, inf)");
    return *box.exponent;
  }
  return Interval(model.exponent());
}

inline void require_box(const PotentialModel& model, const IntervalBox& box) {
  if (box.coords.size() != 2 * model.size())
    throw std::invalid_argument("box has " + std::to_string(box.coords.size()) +
                                " coordinates, expected " + std::to_string(2 * model.size()));
}

struct PairTerms {
  Interval dx, dy, r2, w;  // w = m_i m_j r^-A
};

inline PairTerms pair_terms(const PotentialModel& model, const IntervalBox& box, const Interval& a,
                            std::size_t i, std::size_t j) {
  PairTerms t;
  t.dx = box.coords[2 * i] - box.coords[2 * j];
  t.dy = box.coords[2 * i + 1] - box.coords[2 * j + 1];
  t.r2 = sqr(t.dx) + sqr(t.dy);
  if (!(t.r2.lo() > 0.0))
    throw CollisionError("box touches the collision set (bodies " + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
  t.w = Interval(model.mass(i) * model.mass(j)) * power(t.r2, -(a * Interval(0.5)));
  return t;
}

}  // namespace detail

/// Enclosure of the gradient of f over the box (and over the exponent
/// interval when the box carries one).
inline std::vector<Interval> interval_gradient(const PotentialModel& model, const IntervalBox& box) {
  detail::require_box(model, box);
  const Interval a = detail::exponent_of(model, box);
  const std::size_t n = model.size();
  std::vector<Interval> g(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval mm(model.total_mass() * model.mass(i));
    g[2 * i] = mm * box.coords[2 * i];
    g[2 * i + 1] = mm * box.coords[2 * i + 1];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto t = detail::pair_terms(model, box, a, i, j);
      const Interval fx = t.w * t.dx, fy = t.w * t.dy;
      g[2 * i] -= fx;
      g[2 * i + 1] -= fy;
      g[2 * j] += fx;
      g[2 * j + 1] += fy;
    }
  return g;
}

/// Enclosure of the 2N x 2N Hessian of f over the box.
inline IntervalMatrix interval_hessian(const PotentialModel& model, const IntervalBox& box) {
  detail::require_box(model, box);
  const Interval a = detail::exponent_of(model, box);
  const std::size_t n = model.size();
  IntervalMatrix h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    h(2 * i, 2 * i) = Interval(model.total_mass() * model.mass(i));
    h(2 * i + 1, 2 * i + 1) = Interval(model.total_mass() * model.mass(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto t = detail::pair_terms(model, box, a, i, j);
      const Interval wa = t.w * a / t.r2;
      const Interval bxx = t.w - wa * sqr(t.dx);
      const Interval byy = t.w - wa * sqr(t.dy);
      const Interval bxy = -(wa * t.dx * t.dy);
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

/// Jacobian of the gradient system in slice coordinates: the Hessian without
/// its y_0 column (2N x (2N - 1)).
inline IntervalMatrix slice_jacobian(const PotentialModel& model, const IntervalBox& box) {
  const IntervalMatrix h = interval_hessian(model, box);
  IntervalMatrix j(h.rows(), h.cols() - 1);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0, cc = 0; c < h.cols(); ++c) {
      if (c == 1) continue;
      j(r, cc++) = h(r, c);
    }
  return j;
}

enum class Verdict { excluded, full_rank, unknown, unresolved };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::excluded: return "excluded";
    case Verdict::full_rank: return "full_rank";
    case Verdict::unknown: return "unknown";
    case Verdict::unresolved: return "unresolved";
  }
  return "unknown";
}

struct Exclusion {
  Verdict verdict = Verdict::unknown;
  std::optional<std::size_t> component;  // gradient component bounded away from 0
  std::vector<Interval> gradient;
};

/// `excluded` when some gradient component's enclosure misses 0: then no
/// critical point of f lies in the box.
inline Exclusion exclude_box(const PotentialModel& model, const IntervalBox& box) {
  Exclusion out;
  out.gradient = interval_gradient(model, box);
  for (std::size_t k = 0; k < out.gradient.size(); ++k)
    if (!out.gradient[k].contains_zero()) {
      out.verdict = Verdict::excluded;
      out.component = k;
      break;
    }
  return out;
}

/// Singular values of a real matrix, descending, from the eigenvalues of the
/// symmetric embedding [[0, M], [M^T, 0]] (whose spectrum is +-sigma_k and
/// |rows - cols| zeros).
inline std::vector<double> singular_values(const Matrix& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  if (r == 0 || c == 0) throw std::invalid_argument("empty matrix");
  Matrix emb = Matrix::Zero(r + c, r + c);
  emb.topRightCorner(r, c) = m;
  emb.bottomLeftCorner(c, r) = m.transpose();
  const std::vector<double> ev = symmetric_eigenvalues(emb);
  const auto k = static_cast<std::size_t>(std::min(r, c));
  std::vector<double> out(ev.rbegin(), ev.rbegin() + static_cast<std::ptrdiff_t>(k));
  for (double& s : out) s = std::max(0.0, s);
  return out;
}

struct RankTest {
  Verdict verdict = Verdict::unknown;
  double sigma_min_mid = 0.0;
  double sigma_max_rad = 0.0;
  double margin = 0.0;
};

/// Every member of the interval matrix has full rank if
/// sigma_max(rad) + margin < sigma_min(mid).
inline RankTest shary_full_rank(const IntervalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("empty interval matrix");
  const Matrix mid = m.mid();
  const Matrix rad = m.rad();
  RankTest out;
  out.sigma_min_mid = singular_values(mid).back();
  out.sigma_max_rad = singular_values(rad).front();
  out.margin = kSvdMargin * std::max(1.0, mid.cwiseAbs().maxCoeff());
  if (out.sigma_max_rad + out.margin < out.sigma_min_mid) out.verdict = Verdict::full_rank;
  return out;
}

// ---------------------------------------------------------------------------
// Branch and prune

enum class PruneMode {
  exclusion,   // certify boxes free of critical points
  bifurcation, // additionally accept boxes whose slice Jacobian has full rank
};

struct BoxRecord {
  IntervalBox box;
  Verdict verdict = Verdict::unresolved;
  int depth = 0;
  std::optional<std::size_t> component;
  std::optional<RankTest> rank;
  bool touches_collision = false;
};

struct PruneResult {
  std::vector<IntervalBox> excluded;
  std::vector<IntervalBox> full_rank;
  std::vector<IntervalBox> unresolved;
  std::vector<BoxRecord> log;   // one per evaluated box, in evaluation order
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
};

/// Breadth-first bisection of `region` on the widest coordinate. Each box
/// evaluation costs one unit of `budget`; boxes left when the budget runs out
/// or at `max_depth` are returned as unresolved. Boxes touching the collision
/// set are split like undecided ones.
inline PruneResult branch_and_prune(const PotentialModel& model, const IntervalBox& region,
                                    int max_depth, std::size_t budget,
                                    PruneMode mode = PruneMode::exclusion) {
  detail::require_box(model, region);
  if (max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
  PruneResult out;
  std::deque<std::pair<IntervalBox, int>> queue{{region, 0}};
  while (!queue.empty()) {
    if (out.evaluations >= budget) {
      out.budget_exhausted = true;
      for (auto& [box, depth] : queue) out.unresolved.push_back(std::move(box));
      break;
    }
    auto [box, depth] = std::move(queue.front());
    queue.pop_front();
    ++out.evaluations;

    BoxRecord rec{box, Verdict::unresolved, depth, std::nullopt, std::nullopt, false};
    try {
      const Exclusion ex = exclude_box(model, box);
      if (ex.verdict == Verdict::excluded) {
        rec.verdict = Verdict::excluded;
        rec.component = ex.component;
      } else if (mode == PruneMode::bifurcation) {
        RankTest rt = shary_full_rank(slice_jacobian(model, box));
        if (rt.verdict == Verdict::full_rank) rec.verdict = Verdict::full_rank;
        rec.rank = rt;
      }
    } catch (const CollisionError&) {
      rec.touches_collision = true;
    }

    if (rec.verdict == Verdict::excluded)
      out.excluded.push_back(box);
    else if (rec.verdict == Verdict::full_rank)
      out.full_rank.push_back(box);
    else if (depth >= max_depth)
      out.unresolved.push_back(box);
    else {
      auto [left, right] = box.bisect();
      queue.emplace_back(std::move(left), depth + 1);
      queue.emplace_back(std::move(right), depth + 1);
    }
    out.log.push_back(std::move(rec));
  }
  std::sort(out.excluded.begin(), out.excluded.end());
  std::sort(out.full_rank.begin(), out.full_rank.end());
  std::sort(out.unresolved.begin(), out.unresolved.end());
  return out;
}

// ---------------------------------------------------------------------------
// Preset regions

/// Two bodies near (10.5, 0) and (-10.5, 0): far from the unit-separation
/// solution, so the whole box is solution-free.
inline IntervalBox far_field_two_body() {
  return {{Interval(10.0, 11.0), Interval(0.0), Interval(-11.0, -10.0), Interval(-1.0, 1.0)},
          std::nullopt};
}

/// Box around the exact two-body solution (+-1/2, 0) in the gauge slice.
inline IntervalBox two_body_neighbourhood() {
  return {{Interval(0.3, 0.7), Interval(0.0), Interval(-0.7, -0.3), Interval(-0.2, 0.2)},
          std::nullopt};
}

/// Three bodies with body 0 on the positive x-axis at radius in [0.62, 0.72],
/// body 1 above and body 2 below the axis. Critical configurations of three
/// equal masses put every body at radius 1/sqrt(3) (equilateral) or at 0 or
/// (5/12)^(1/3) ~ 0.7469 (collinear, A = 3), so the box holds none.
inline IntervalBox three_body_gap() {
  return {{Interval(0.62, 0.72), Interval(0.0), Interval(-1.0, 1.0), Interval(0.05, 1.0),
           Interval(-1.0, 1.0), Interval(-1.0, -0.05)},
          std::nullopt};
}

}  // namespace ccmorse::rigor
