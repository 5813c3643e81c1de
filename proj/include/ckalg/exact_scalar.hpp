#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ckalg/base.hpp"

namespace ckalg {

/// Element of the field Q(sqrt(d) : d squarefree), stored as a finite map
/// d -> q_d in canonical form (keys squarefree, zero coefficients absent,
/// d = 1 is the rational part).  This is the coefficient field for all
/// symbolic computations: the only irrationalities that ever appear are
/// 1/sqrt(n_v) factors, and the field is closed under the four ring
/// operations as well as inversion.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(int v) { if (v != 0) coeffs_[1] = v; }  // NOLINT: implicit by design
  ExactScalar(const Rational& q) { if (q != 0) coeffs_[1] = q; }  // NOLINT

  /// q * sqrt(d), with d > 0 not necessarily squarefree.
  static ExactScalar sqrt_term(Rational q, std::int64_t d) {
    if (d <= 0) throw input_error("sqrt_term requires a positive radicand");
    std::int64_t s = 1;
    for (std::int64_t p = 2; p * p <= d; ++p) {
      while (d % (p * p) == 0) { d /= p * p; s *= p; }
    }
    ExactScalar r;
    q *= s;
    if (q != 0) r.coeffs_[d] = q;
    return r;
  }

  /// 1 / sqrt(n) for n >= 1.
  static ExactScalar inv_sqrt(std::int64_t n) {
    return sqrt_term(Rational(1, n), n);
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 1);
  }
  const std::map<std::int64_t, Rational>& coeffs() const { return coeffs_; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
    return a.coeffs_ < b.coeffs_;
  }

  ExactScalar& operator+=(const ExactScalar& o) {
    for (const auto& [d, q] : o.coeffs_) {
      auto it = coeffs_.find(d);
      if (it == coeffs_.end()) {
        coeffs_.emplace(d, q);
      } else {
        it->second += q;
        if (it->second == 0) coeffs_.erase(it);
      }
    }
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }

  ExactScalar operator-() const {
    ExactScalar r(*this);
    for (auto& [d, q] : r.coeffs_) q = -q;
    return r;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    for (const auto& [d1, q1] : a.coeffs_) {
      for (const auto& [d2, q2] : b.coeffs_) {
        // sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)(d2/g)) with g = gcd(d1,d2);
        // both factors squarefree keeps the product key squarefree.
        std::int64_t g = gcd_i64(d1, d2);
        std::int64_t d = (d1 / g) * (d2 / g);
        Rational q = q1 * q2 * g;
        auto it = r.coeffs_.find(d);
        if (it == r.coeffs_.end()) {
          if (q != 0) r.coeffs_.emplace(d, q);
        } else {
          it->second += q;
          if (it->second == 0) r.coeffs_.erase(it);
        }
      }
    }
    return r;
  }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  /// Multiplicative inverse; throws on zero.  Rationalizes one prime radical
  /// at a time: x = a + sqrt(p)*c with a, c in the subfield without p, so
  /// 1/x = (a - sqrt(p)*c) / (a^2 - p*c^2) and the recursion loses p.
  ExactScalar inverse() const {
    if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
    if (is_rational()) return ExactScalar(Rational(1) / coeffs_.begin()->second);
    std::int64_t p = largest_prime_in_keys();
    ExactScalar a, c;
    for (const auto& [d, q] : coeffs_) {
      if (d % p == 0) {
        c.coeffs_[d / p] = q;
      } else {
        a.coeffs_[d] = q;
      }
    }
    ExactScalar norm = a * a - ExactScalar(Rational(p)) * c * c;
    ExactScalar conj = a - sqrt_term(1, p) * c;
    return conj * norm.inverse();
  }

  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return a * b.inverse();
  }

  double to_double() const {
    double v = 0;
    for (const auto& [d, q] : coeffs_) {
      v += q.convert_to<double>() * std::sqrt(static_cast<double>(d));
    }
    return v;
  }

  /// "3/2" for rationals, "1/2*sqrt(2) + 1" style otherwise.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [d, q] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += rational_to_string(q);
      if (d != 1) s += "*sqrt(" + std::to_string(d) + ")";
    }
    return s;
  }

 private:
  static std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    while (b) { std::int64_t t = a % b; a = b; b = t; }
    return a;
  }

  std::int64_t largest_prime_in_keys() const {
    std::int64_t best = 1;
    for (const auto& [d, q] : coeffs_) {
      std::int64_t n = d;
      for (std::int64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) { n /= p; if (p > best) best = p; }
      }
      if (n > best) best = n;
    }
    return best;
  }

  std::map<std::int64_t, Rational> coeffs_;
};

}  // namespace ckalg
