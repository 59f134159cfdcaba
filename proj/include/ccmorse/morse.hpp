#pragma once

// Integer polynomial bookkeeping for Morse inequalities:
//   M(t) = P(t) + (1 + t) R(t),  R with non-negative coefficients.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccmorse::morse {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coefficients)
      : coeffs_(std::move(coefficients)) {
    trim();
  }

  /// Coefficient of t^k (zero beyond the degree).
  std::int64_t operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  std::int64_t evaluate(std::int64_t t) const {
    std::int64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(std::int64_t k, const IntPolynomial& a) {
    std::vector<std::int64_t> c = a.coeffs_;
    for (auto& x : c) x *= k;
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// "6 + 24t + 20t^2"; "0" for the zero polynomial.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const std::int64_t c = coeffs_[k];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const std::int64_t mag = c < 0 ? -c : c;
      if (k == 0 || mag != 1) os << mag;
      if (k >= 1) os << "t";
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<std::int64_t> coeffs_;
};

enum class PoincareVariant {
  full,     // prod_{j=1}^{N-1} (1 + j t)
  reduced,  // the same product divided by (1 + t)
};

inline const char* to_string(PoincareVariant v) {
  return v == PoincareVariant::full ? "full" : "reduced";
}

inline IntPolynomial poincare_polynomial(int n, PoincareVariant variant = PoincareVariant::full) {
  if (n < 2) throw std::invalid_argument("Poincare polynomial needs n >= 2");
  IntPolynomial p({1});
  const int first = variant == PoincareVariant::full ? 1 : 2;
  for (int j = first; j <= n - 1; ++j) p = p * IntPolynomial({1, j});
  return p;
}

struct CensusEntry {
  int morse_index = 0;
  std::int64_t multiplicity = 1;
};

inline IntPolynomial morse_polynomial(const std::vector<CensusEntry>& census) {
  std::vector<std::int64_t> c;
  for (const auto& e : census) {
    if (e.morse_index < 0) throw std::invalid_argument("Morse index must be non-negative");
    if (e.multiplicity < 1) throw std::invalid_argument("multiplicity must be positive");
    const auto k = static_cast<std::size_t>(e.morse_index);
    if (c.size() <= k) c.resize(k + 1, 0);
    c[k] += e.multiplicity;
  }
  return IntPolynomial(std::move(c));
}

enum class ConsistencyFailure { none, not_divisible, negative_coefficient };

struct Consistency {
  bool ok = false;
  IntPolynomial remainder;  // R(t) when ok
  ConsistencyFailure failure = ConsistencyFailure::none;
  int degree = -1;  // degree of the first negative coefficient of R
  std::string message;
};

/// R = (M - P) / (1 + t) by synthetic division, rejecting a non-zero remainder
/// or any negative coefficient.
inline Consistency morse_consistency(const IntPolynomial& m, const IntPolynomial& p) {
  const IntPolynomial diff = m - p;
  Consistency out;
  if (diff.is_zero()) {
    out.ok = true;
    out.message = "R = 0";
    return out;
  }
  const auto& d = diff.coefficients();
  std::vector<std::int64_t> r(d.size() - 1, 0);
  std::int64_t carry = 0;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    r[k] = d[k] - carry;
    carry = r[k];
  }
  if (d.back() != carry) {
    out.failure = ConsistencyFailure::not_divisible;
    out.message = "M - P = " + diff.to_string() + " is not divisible by (1 + t)";
    return out;
  }
  for (std::size_t k = 0; k < r.size(); ++k)
    if (r[k] < 0) {
      out.failure = ConsistencyFailure::negative_coefficient;
      out.degree = static_cast<int>(k);
      out.remainder = IntPolynomial(r);
      out.message = "R has negative coefficient " + std::to_string(r[k]) + " at t^" +
                    std::to_string(k);
      return out;
    }
  out.ok = true;
  out.remainder = IntPolynomial(std::move(r));
  out.message = "R = " + out.remainder.to_string();
  return out;
}

}  // namespace ccmorse::morse
