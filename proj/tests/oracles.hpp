// Independent reference computations used only by the tests. Nothing here
// calls the library routine it is meant to check.
#pragma once

#include <functional>
#include <random>
#include <vector>

#include "vpf/vpf.hpp"

namespace vpf {
inline void PrintTo(const IntVector& v, std::ostream* os) { *os << v.str(); }
}  // namespace vpf

namespace oracle {

using namespace vpf;

/// Exhaustive search for x in (Z/d)^n with M x = c (mod d).
inline bool congruence_solvable(const IntMatrix& m, const std::vector<BigInt>& c, long d) {
  const std::size_t n = m.cols;
  std::vector<long> x(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < m.rows && ok; ++i) {
      BigInt s = -c[i];
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(d));
      ok = r == 0;
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < n && ++x[k] == d) x[k++] = 0;
    if (k == n) return false;
  }
}

/// Is gamma in the Z-span of the generators? Decided by Cramer's rule over Q.
inline bool in_lattice(const std::vector<IntVector>& gens, const IntVector& gamma) {
  const std::size_t n = gens.size();
  RationalMatrix b(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) b(i, j) = static_cast<long>(gens[j][i]);
  // Gaussian elimination on the augmented system.
  std::vector<RationalVector> rows(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = b(i, j);
    rows[i][n] = static_cast<long>(gamma[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (rows[p][c] == 0) ++p;
    std::swap(rows[p], rows[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[c][c];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[c][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (Rational(rows[i][n] / rows[i][i]).get_den() != 1) return false;
  return true;
}

/// Power series of one fraction up to exponent hi in every coordinate, by
/// multiplying truncated geometric series as polynomials.
inline LaurentPoly naive_series(const GeneratingFraction& f, Int hi) {
  const std::size_t n = f.dim();
  auto truncate = [&](const LaurentPoly& p) {
    LaurentPoly r(n);
    for (const auto& [e, c] : p.terms()) {
      bool keep = true;
      for (std::size_t i = 0; i < n; ++i) keep = keep && e[i] <= hi;
      if (keep) r.add_term(e, c);
    }
    return r;
  };
  LaurentPoly acc = truncate(f.numerator);
  // Numerator exponents may be negative, so geometric series must reach past hi.
  IntVector reach(n, hi);
  for (const auto& [e, c] : acc.terms())
    for (std::size_t i = 0; i < n; ++i) reach[i] = std::max(reach[i], hi - e[i]);
  for (const auto& d : f.denominators) {
    const IntVector v = d.vector();
    LaurentPoly geo(n);
    for (Int k = 0;; ++k) {
      IntVector e = v * k;
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i) inside = inside && e[i] <= reach[i];
      if (!inside) break;
      geo.add_term(e, 1);
    }
    for (Int r = 0; r < d.multiplicity; ++r) acc = truncate(acc * geo);
  }
  return acc;
}

inline LaurentPoly restrict_box(const LaurentPoly& p, Int lo, Int hi) {
  LaurentPoly r(p.dim());
  for (const auto& [e, c] : p.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < p.dim(); ++i) keep = keep && e[i] >= lo && e[i] <= hi;
    if (keep) r.add_term(e, c);
  }
  return r;
}

/// Number of ways to write gamma as a nonnegative combination, by plain recursion.
inline long count_representations(const std::vector<IntVector>& v, std::size_t i, IntVector gamma) {
  if (gamma.is_zero()) return 1;
  if (i == v.size()) return 0;
  long total = 0;
  for (;;) {
    total += count_representations(v, i + 1, gamma);
    gamma -= v[i];
    if (!gamma.is_nonnegative()) break;
  }
  return total;
}

/// sum_{t=0}^{x} [l t = m mod d] t^k by direct summation.
inline Rational direct_tau_power_sum(Int k, Int l, Int m, Int d, Int x) {
  Rational s = 0;
  for (Int t = 0; t <= x; ++t) {
    Int r = ((l * t - m) % d + d) % d;
    if (r == 0) s += pow(Rational(static_cast<long>(t)), k);
  }
  return s;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, Int lo, Int hi) {
  std::uniform_int_distribution<Int> dist(lo, hi);
  IntVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline IntVector random_nonzero_vector(std::mt19937_64& rng, std::size_t n, Int lo, Int hi) {
  for (;;) {
    IntVector v = random_vector(rng, n, lo, hi);
    if (!v.is_zero()) return v;
  }
}

/// A point with small nonzero rational coordinates that avoids every pole of s.
inline std::vector<Rational> random_pole_free_point(std::mt19937_64& rng, const FractionSum& s) {
  std::uniform_int_distribution<long> num(1, 9), den(2, 11);
  std::uniform_int_distribution<int> sign(0, 1);
  for (;;) {
    std::vector<Rational> pt(s.dim);
    for (auto& x : pt) x = make_rational(num(rng) * (sign(rng) ? 1 : -1), den(rng));
    bool ok = true;
    for (const auto& f : s.fractions)
      for (const auto& d : f.denominators) ok = ok && monomial_value(d.vector(), pt) != 1;
    if (ok) return pt;
  }
}

}  // namespace oracle
