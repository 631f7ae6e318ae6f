/// @file genfunc.hpp
/// Sums of fractions p(x) / prod (1 - x^{l a})^m and the rewrite identities
/// used by the decomposition engine.
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vpf/laurent.hpp"

namespace vpf {

/// 1/(1 - x^{l*alpha})^m. `alpha` is kept primitive and the lattice content is
/// folded into `elongation`, so equal denominators always compare equal.
struct DenominatorFactor {
  IntVector alpha;
  Int elongation = 1;
  Int multiplicity = 1;

  static DenominatorFactor from_vector(const IntVector& v, Int multiplicity = 1) {
    const Int g = v.content();
    if (g == 0) fail(ErrorKind::PoleHit, "denominator vector is zero");
    if (multiplicity < 1) fail(ErrorKind::DimensionMismatch, "multiplicity must be positive");
    return {v.primitive(), g, multiplicity};
  }

  IntVector vector() const { return alpha * elongation; }
  bool same_key(const DenominatorFactor& o) const { return elongation == o.elongation && alpha == o.alpha; }

  friend bool operator==(const DenominatorFactor&, const DenominatorFactor&) = default;
  friend auto operator<=>(const DenominatorFactor& a, const DenominatorFactor& b) {
    if (auto c = a.alpha <=> b.alpha; c != 0) return c;
    if (auto c = a.elongation <=> b.elongation; c != 0) return c;
    return a.multiplicity <=> b.multiplicity;
  }
};

using DenominatorList = std::vector<DenominatorFactor>;

/// Sorts by (alpha, l) and merges equal keys by adding multiplicities.
inline DenominatorList canonical_denominators(DenominatorList d) {
  std::sort(d.begin(), d.end());
  DenominatorList out;
  for (auto& f : d) {
    if (!out.empty() && out.back().same_key(f))
      out.back().multiplicity = checked_add(out.back().multiplicity, f.multiplicity);
    else
      out.push_back(std::move(f));
  }
  return out;
}

/// a0 * gaining = sum_j coefficients[j] * vectors[j], with a0 > 0 and every
/// coefficient nonzero. Vectors are full denominator vectors l*alpha.
struct LinearRelation {
  IntVector gaining;
  Int a0 = 1;
  std::vector<IntVector> vectors;
  std::vector<Int> coefficients;

  bool holds() const {
    if (a0 <= 0 || vectors.size() != coefficients.size() || vectors.empty()) return false;
    IntVector rhs(gaining.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      if (coefficients[j] == 0) return false;
      rhs += vectors[j] * coefficients[j];
    }
    return rhs == gaining * a0;
  }
  friend bool operator==(const LinearRelation&, const LinearRelation&) = default;
};

struct GeneratingFraction {
  LaurentPoly numerator;
  DenominatorList denominators;
  bool reduced = false;
  std::optional<LinearRelation> preferred_relation;

  GeneratingFraction() = default;
  GeneratingFraction(LaurentPoly num, DenominatorList den)
      : numerator(std::move(num)), denominators(canonical_denominators(std::move(den))) {}

  /// prod over `vectors` of 1/(1 - x^v), numerator 1.
  static GeneratingFraction product(std::span<const IntVector> vectors) {
    if (vectors.empty()) fail(ErrorKind::DimensionMismatch, "empty product has no dimension");
    DenominatorList d;
    for (const auto& v : vectors) d.push_back(DenominatorFactor::from_vector(v));
    return {LaurentPoly::constant(vectors.front().size(), 1), std::move(d)};
  }

  std::size_t dim() const { return numerator.dim(); }

  /// One full vector l*alpha per distinct factor.
  std::vector<IntVector> vectors() const {
    std::vector<IntVector> v;
    v.reserve(denominators.size());
    for (const auto& f : denominators) v.push_back(f.vector());
    return v;
  }

  Int total_multiplicity() const {
    Int s = 0;
    for (const auto& f : denominators) s += f.multiplicity;
    return s;
  }

  bool independent() const {
    const auto v = vectors();
    return rank(v) == v.size();
  }
};

struct FractionSum {
  std::size_t dim = 0;
  std::vector<GeneratingFraction> fractions;

  FractionSum() = default;
  explicit FractionSum(std::size_t n) : dim(n) {}

  void add(GeneratingFraction f) {
    if (f.dim() != dim) fail(ErrorKind::DimensionMismatch, "fraction dimension differs from sum");
    if (f.numerator.is_zero()) return;
    fractions.push_back(std::move(f));
  }
  void append(const FractionSum& o) {
    for (const auto& f : o.fractions) add(f);
  }
  std::size_t size() const { return fractions.size(); }
};

/// Combines fractions with identical denominators and drops zero numerators.
/// Output is ordered by denominator list.
inline FractionSum merge_equal_denominators(const FractionSum& s) {
  std::map<DenominatorList, LaurentPoly> acc;
  for (const auto& f : s.fractions) {
    auto [it, inserted] = acc.try_emplace(f.denominators, f.numerator);
    if (!inserted) it->second += f.numerator;
  }
  FractionSum out(s.dim);
  for (auto& [den, num] : acc) {
    if (num.is_zero()) continue;
    GeneratingFraction f;
    f.numerator = std::move(num);
    f.denominators = den;
    out.fractions.push_back(std::move(f));
  }
  return out;
}

/// p_n(x^alpha) with 1/(1-x^alpha) = p_n(x^alpha) / (1-x^{n alpha}).
inline LaurentPoly elongation_numerator(const IntVector& alpha, Int n) {
  if (n == 0) fail(ErrorKind::ZeroElongation, "elongation factor is zero");
  LaurentPoly p(alpha.size());
  if (n > 0) {
    for (Int k = 0; k < n; ++k) p.add_term(alpha * k, 1);
  } else {
    for (Int k = -1; k >= n; --k) p.add_term(alpha * k, -1);
  }
  return p;
}

/// prod_i 1/(1-x^{alpha_i}) rewritten over the common factor 1-x^{sum a_i alpha_i}.
/// Term j: x^{a_1 alpha_1 + ... + a_{j-1} alpha_{j-1}} p_{a_j}(x^{alpha_j}) over
/// the remaining factors (1-x^{alpha_i}), i != j, and (1-x^{sum a_i alpha_i}).
inline FractionSum szenes_vergne_elongated(std::span<const IntVector> alphas, std::span<const Int> a) {
  if (alphas.empty() || alphas.size() != a.size())
    fail(ErrorKind::DimensionMismatch, "need one coefficient per vector");
  const std::size_t n = alphas.front().size();
  IntVector total(n);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (a[i] == 0) fail(ErrorKind::ZeroElongation, "zero coefficient in relation");
    total += alphas[i] * a[i];
  }
  if (total.is_zero()) fail(ErrorKind::ZeroSumVector, "weighted sum of vectors is zero");

  FractionSum out(n);
  IntVector prefix(n);
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    DenominatorList d;
    for (std::size_t i = 0; i < alphas.size(); ++i)
      if (i != j) d.push_back(DenominatorFactor::from_vector(alphas[i]));
    d.push_back(DenominatorFactor::from_vector(total));
    out.add({elongation_numerator(alphas[j], a[j]).shifted(prefix), std::move(d)});
    prefix += alphas[j] * a[j];
  }
  return out;
}

/// All coefficients 1.
inline FractionSum szenes_vergne(std::span<const IntVector> alphas) {
  std::vector<Int> ones(alphas.size(), 1);
  return szenes_vergne_elongated(alphas, ones);
}

/// 1/((1-x^a)(1-x^b)) = 1/(1-x^{a-b}) [1/(1-x^b) - x^{a-b}/(1-x^a)].
inline FractionSum two_term_split(const IntVector& alpha, const IntVector& beta) {
  if (alpha == beta) fail(ErrorKind::EqualVectors, "vectors coincide");
  const IntVector diff = alpha - beta;
  const std::size_t n = alpha.size();
  FractionSum out(n);
  out.add({LaurentPoly::constant(n, 1),
           {DenominatorFactor::from_vector(diff), DenominatorFactor::from_vector(beta)}});
  out.add({LaurentPoly::monomial(diff, -1),
           {DenominatorFactor::from_vector(diff), DenominatorFactor::from_vector(alpha)}});
  return out;
}

/// 1/((1-x^a)^l (1-x^b)^m) with p = -x^a (x^{-b} + ... + x^{-nb}) equals
///   sum_{t=1..l} C(l+m-t-1, m-1) p^m     / ((1-x^a)^t (1-x^{a-nb})^{l+m-t})
/// + sum_{t=1..m} C(l+m-t-1, l-1) p^{m-t} / ((1-x^b)^t (1-x^{a-nb})^{l+m-t}).
inline FractionSum power_two_term_split(const IntVector& alpha, const IntVector& beta, Int l, Int m, Int n) {
  if (l < 1 || m < 1) fail(ErrorKind::ZeroElongation, "multiplicities must be positive");
  if (n < 1) fail(ErrorKind::DegenerateDifference, "shift multiple must be positive");
  const IntVector diff = alpha - beta * n;
  if (diff.is_zero()) fail(ErrorKind::DegenerateDifference, "alpha equals n*beta");
  const std::size_t dim = alpha.size();

  LaurentPoly p(dim);
  for (Int k = 1; k <= n; ++k) p.add_term(alpha - beta * k, -1);

  std::vector<LaurentPoly> p_pow{LaurentPoly::constant(dim, 1)};
  for (Int k = 1; k <= m; ++k) p_pow.push_back(p_pow.back() * p);

  FractionSum out(dim);
  for (Int t = 1; t <= l; ++t) {
    const Rational c(binomial(l + m - t - 1, m - 1));
    out.add({p_pow[static_cast<std::size_t>(m)] * c,
             {DenominatorFactor::from_vector(alpha, t), DenominatorFactor::from_vector(diff, l + m - t)}});
  }
  for (Int t = 1; t <= m; ++t) {
    const Rational c(binomial(l + m - t - 1, l - 1));
    out.add({p_pow[static_cast<std::size_t>(m - t)] * c,
             {DenominatorFactor::from_vector(beta, t), DenominatorFactor::from_vector(diff, l + m - t)}});
  }
  return out;
}

inline Rational substitute_fraction(const GeneratingFraction& f, std::span<const Rational> pt) {
  Rational den = 1;
  for (const auto& d : f.denominators) {
    const Rational base = 1 - monomial_value(d.vector(), pt);
    if (base == 0) fail(ErrorKind::PoleHit, "point lies on the pole of 1-x^" + d.vector().str());
    den *= pow(base, d.multiplicity);
  }
  return substitute_point(f.numerator, pt) / den;
}

inline Rational substitute_fraction_sum(const FractionSum& s, std::span<const Rational> pt) {
  if (pt.size() != s.dim) fail(ErrorKind::DimensionMismatch, "point dimension differs from sum");
  Rational total = 0;
  for (const auto& f : s.fractions) total += substitute_fraction(f, pt);
  return total;
}

/// Power-series expansion (each 1/(1-x^v) read as sum_k x^{kv}) restricted to
/// the box lo <= e <= hi.
inline LaurentPoly series_truncate(const FractionSum& s, const IntVector& lo, const IntVector& hi) {
  const std::size_t n = s.dim;
  if (lo.size() != n || hi.size() != n) fail(ErrorKind::DimensionMismatch, "box dimension differs from sum");
  for (const auto& f : s.fractions)
    for (const auto& d : f.denominators)
      if (!d.alpha.is_nonnegative() || d.alpha.is_zero())
        fail(ErrorKind::NonExpandableDenominator, "denominator vector " + d.vector().str() + " is not expandable");

  LaurentPoly result(n);
  for (const auto& f : s.fractions) {
    if (f.numerator.is_zero()) continue;
    // Window from the smallest numerator exponent up to hi; series terms only move upward.
    IntVector start = hi;
    for (const auto& [e, c] : f.numerator.terms())
      for (std::size_t i = 0; i < n; ++i) start[i] = std::min(start[i], e[i]);
    bool empty = false;
    std::vector<std::size_t> extent(n), stride(n);
    std::size_t total = 1;
    for (std::size_t i = n; i-- > 0;) {
      if (hi[i] < start[i]) empty = true;
      extent[i] = empty ? 0 : static_cast<std::size_t>(hi[i] - start[i] + 1);
      stride[i] = total;
      total *= extent[i];
    }
    if (empty || total == 0) continue;

    std::vector<Rational> grid(total);
    auto index_of = [&](const IntVector& e, std::size_t& idx) {
      idx = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (e[i] < start[i] || e[i] > hi[i]) return false;
        idx += static_cast<std::size_t>(e[i] - start[i]) * stride[i];
      }
      return true;
    };
    for (const auto& [e, c] : f.numerator.terms()) {
      std::size_t idx;
      if (index_of(e, idx)) grid[idx] += c;
    }
    for (const auto& d : f.denominators) {
      const IntVector v = d.vector();
      bool fits = true;
      std::size_t offset = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(v[i]) >= extent[i]) fits = false;
        offset += static_cast<std::size_t>(v[i]) * stride[i];
      }
      if (!fits) continue;  // every nonzero shift leaves the window
      for (Int rep = 0; rep < d.multiplicity; ++rep) {
        // In-place prefix recurrence: g[e] += g[e - v], ascending.
        std::vector<std::size_t> coord(n, 0);
        for (std::size_t idx = 0; idx < total; ++idx) {
          bool ok = true;
          for (std::size_t i = 0; i < n; ++i)
            if (coord[i] < static_cast<std::size_t>(v[i])) {
              ok = false;
              break;
            }
          if (ok && grid[idx - offset] != 0) grid[idx] += grid[idx - offset];
          for (std::size_t i = n; i-- > 0;) {
            if (++coord[i] < extent[i]) break;
            coord[i] = 0;
          }
        }
      }
    }
    std::vector<std::size_t> coord(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (grid[idx] != 0) {
        IntVector e(n);
        bool inside = true;
        for (std::size_t i = 0; i < n; ++i) {
          e[i] = start[i] + static_cast<Int>(coord[i]);
          if (e[i] < lo[i]) inside = false;
        }
        if (inside) result.add_term(e, grid[idx]);
      }
      for (std::size_t i = n; i-- > 0;) {
        if (++coord[i] < extent[i]) break;
        coord[i] = 0;
      }
    }
  }
  return result;
}

inline LaurentPoly series_truncate(const FractionSum& s, Int lo, Int hi) {
  return series_truncate(s, IntVector(s.dim, lo), IntVector(s.dim, hi));
}

inline FractionSum single(GeneratingFraction f) {
  FractionSum s(f.dim());
  s.add(std::move(f));
  return s;
}

}  // namespace vpf
