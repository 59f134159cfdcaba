#pragma once

// Dense symmetric eigensolver (cyclic Jacobi) and spectrum bookkeeping.

#include "ccmorse/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ccmorse {

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

namespace detail {

inline void require_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("matrix is not symmetric to 1e-12 relative");
}

}  // namespace detail

/// Cyclic-by-row Jacobi sweeps until the off-diagonal mass is at rounding
/// level. Deterministic; fine for the 2N x 2N matrices used here.
inline SymmetricEigen symmetric_eigen(const Matrix& input, bool want_vectors = true) {
  detail::require_symmetric(input);
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = want_vectors ? Matrix::Identity(n, n) : Matrix();
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= eps * eps * a.squaredNorm() * 1e-2 || off == 0.0) break;

    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // skip entries already negligible against both diagonals
        if (sweep > 3 && std::abs(apq) <= eps * 1e-2 * std::abs(a(p, p)) &&
            std::abs(apq) <= eps * 1e-2 * std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        if (want_vectors)
          for (Eigen::Index k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
      }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.reserve(static_cast<std::size_t>(n));
  if (want_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values.push_back(a(src, src));
    if (want_vectors) out.vectors.col(k) = v.col(src);
  }
  return out;
}

inline std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  return symmetric_eigen(m, false).values;
}

/// Eigenvalues of a Hessian with its zero band and negative count.
struct SpectrumResult {
  std::vector<double> eigenvalues;
  int zero_count = 0;
  int negative_count = 0;
  double zero_tolerance = 0.0;
};

/// Zero band: |lambda| < 1e-7 * max(1, spectral radius).
inline double zero_band(const std::vector<double>& eigenvalues) {
  double radius = 0.0;
  for (double x : eigenvalues) radius = std::max(radius, std::abs(x));
  return 1e-7 * std::max(1.0, radius);
}

inline SpectrumResult summarize_spectrum(std::vector<double> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  SpectrumResult out;
  out.zero_tolerance = zero_band(eigenvalues);
  for (double x : eigenvalues) {
    if (std::abs(x) < out.zero_tolerance)
      ++out.zero_count;
    else if (x < 0.0)
      ++out.negative_count;
  }
  out.eigenvalues = std::move(eigenvalues);
  return out;
}

inline SpectrumResult hessian_spectrum(const PotentialModel& model, const Configuration& config) {
  return summarize_spectrum(symmetric_eigenvalues(hessian_f(model, config)));
}

}  // namespace ccmorse
