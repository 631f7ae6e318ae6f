/// @file laurent.hpp
/// Sparse Laurent polynomials over Q in n variables.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vpf/arith.hpp"

namespace vpf {

/// Renders x^e in appendix style: `x_1^{2}x_2^{-4}`, exponent 1 omitted, "1" for e = 0.
inline std::string monomial_latex(const IntVector& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    s += "x_" + std::to_string(i + 1);
    if (e[i] != 1) s += "^{" + std::to_string(e[i]) + "}";
  }
  return s.empty() ? "1" : s;
}

class LaurentPoly {
 public:
  using Terms = std::map<IntVector, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t dim) : dim_(dim) {}

  static LaurentPoly constant(std::size_t dim, const Rational& c) {
    LaurentPoly p(dim);
    p.add_term(IntVector(dim), c);
    return p;
  }
  static LaurentPoly monomial(const IntVector& e, const Rational& c = 1) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const IntVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const IntVector& e, const Rational& c) {
    if (e.size() != dim_) fail(ErrorKind::DimensionMismatch, "monomial dimension differs from polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& k) { return a *= k; }
  LaurentPoly operator-() const { return *this * Rational(-1); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_dim(b);
    LaurentPoly r(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// Multiplies by the monomial x^e.
  LaurentPoly shifted(const IntVector& e) const {
    LaurentPoly r(dim_);
    for (const auto& [ex, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), ex + e, c);
    return r;
  }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly r = constant(dim_, 1), base = *this;
    while (k) {
      if (k & 1u) r *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Terms in decreasing exponent order, e.g. `-x_2^{3}-2x_2^{2}-x_2`.
  std::string latex() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool constant_term = e.is_zero();
      Rational mag = abs(c);
      if (c < 0)
        s += "-";
      else if (!first)
        s += "+";
      first = false;
      if (mag != 1 || constant_term) {
        if (mag.get_den() == 1)
          s += mag.get_num().get_str();
        else
          s += "\\frac{" + mag.get_num().get_str() + "}{" + mag.get_den().get_str() + "}";
      }
      if (!constant_term) s += monomial_latex(e);
    }
    return s;
  }

 private:
  void check_dim(const LaurentPoly& o) const {
    if (o.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "polynomial dimensions differ");
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

inline LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

/// x^e evaluated at pt, every coordinate nonzero.
inline Rational monomial_value(const IntVector& e, std::span<const Rational> pt) {
  if (e.size() != pt.size()) fail(ErrorKind::DimensionMismatch, "point dimension differs from monomial");
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (pt[i] == 0) fail(ErrorKind::ZeroCoordinate, "zero coordinate in substitution point");
    v *= pow(pt[i], e[i]);
  }
  return v;
}

inline Rational substitute_point(const LaurentPoly& p, std::span<const Rational> pt) {
  if (pt.size() != p.dim()) fail(ErrorKind::DimensionMismatch, "point dimension differs from polynomial");
  for (const auto& x : pt)
    if (x == 0) fail(ErrorKind::ZeroCoordinate, "zero coordinate in substitution point");
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) s += c * monomial_value(e, pt);
  return s;
}

/// Value of a polynomial (all exponents nonnegative) at an arbitrary rational point.
inline Rational evaluate_polynomial(const LaurentPoly& p, std::span<const Rational> pt) {
  if (pt.size() != p.dim()) fail(ErrorKind::DimensionMismatch, "point dimension differs from polynomial");
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < e.size() && v != 0; ++i) {
      if (e[i] < 0) fail(ErrorKind::ZeroCoordinate, "negative exponent in polynomial evaluation");
      if (e[i] > 0) v *= pow(pt[i], e[i]);
    }
    s += v;
  }
  return s;
}

}  // namespace vpf
