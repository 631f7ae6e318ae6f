/// @file evaluate.hpp
/// From a partial fraction decomposition to the vector partition function:
/// simplicial terms are turned into quasipolynomials, summed over the fractions
/// whose cone contains a generic point of the chamber. Also the brute-force
/// counter used to check the result.
#pragma once

#include <map>
#include <vector>

#include "vpf/geometry.hpp"
#include "vpf/pfd.hpp"
#include "vpf/quasi.hpp"

namespace vpf {

/// Rows of the inverse of the matrix whose columns are the alphas, so that
/// <beta_i, alpha_k> = delta_ik.
inline std::vector<RationalVector> dual_basis(std::span<const IntVector> alphas) {
  if (alphas.empty()) fail(ErrorKind::NotFullRank, "no vectors");
  const std::size_t n = alphas.front().size();
  if (alphas.size() != n || rank(alphas) != n) fail(ErrorKind::NotFullRank, "need n independent vectors");
  const RationalMatrix inv = invert_rational_matrix(RationalMatrix::from_columns(alphas));
  std::vector<RationalVector> betas(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) betas[i][j] = inv(i, j);
  return betas;
}

/// binom(s + m - 1, m - 1) = (s+1)(s+2)...(s+m-1) / (m-1)! for a polynomial s.
inline LaurentPoly binomial_polynomial(const LaurentPoly& s, Int m) {
  const std::size_t n = s.dim();
  LaurentPoly r = LaurentPoly::constant(n, 1);
  BigInt fact = 1;
  for (Int k = 1; k < m; ++k) {
    r *= s + LaurentPoly::constant(n, make_rational(k));
    fact *= static_cast<long>(k);
  }
  return r * make_rational(BigInt(1), fact);
}

struct SimplicialData {
  std::vector<IntVector> generators;  // full vectors l*alpha, polarized
  std::vector<Int> multiplicities;
  LaurentPoly numerator;              // after polarization
};

/// Flips denominators lying in the negative lexicographic half-space:
/// 1/(1-x^g)^m = (-1)^m x^{-mg} / (1-x^{-g})^m. Inputs with nonnegative
/// vectors are lex-positive, so every expansion is read in the same region.
inline SimplicialData polarize(const GeneratingFraction& f) {
  SimplicialData d;
  d.numerator = f.numerator;
  for (const auto& fac : f.denominators) {
    IntVector g = fac.vector();
    Int first = 0;
    for (Int x : g)
      if (x != 0) {
        first = x;
        break;
      }
    if (first < 0) {
      g = -g;
      d.numerator = d.numerator.shifted(g * fac.multiplicity);
      if (fac.multiplicity % 2) d.numerator *= Rational(-1);
    }
    d.generators.push_back(g);
    d.multiplicities.push_back(fac.multiplicity);
  }
  return d;
}

/// Quasipolynomial of one reduced fraction as seen from the indicator point;
/// zero unless the fraction's cone is full-dimensional and contains the point.
inline QuasiPolynomial brion_vergne_term(const GeneratingFraction& f, std::span<const Rational> indicator) {
  const std::size_t n = f.dim();
  if (indicator.size() != n) fail(ErrorKind::DimensionMismatch, "indicator dimension differs from fraction");
  QuasiPolynomial out(n);
  const SimplicialData sd = polarize(f);
  if (sd.generators.size() != n || rank(sd.generators) != n) {
    if (rank(sd.generators) != sd.generators.size())
      fail(ErrorKind::NotFullRank, "fraction is not reduced");
    return out;
  }
  const auto betas = dual_basis(sd.generators);
  for (const auto& b : betas) {
    const Rational c = dot(b, RationalVector(indicator.begin(), indicator.end()));
    if (c == 0) fail(ErrorKind::BadIndicator, "indicator lies on a wall of a fraction cone");
    if (c < 0) return out;
  }
  // gamma - delta in the generator lattice <=> d B^{-1} gamma = d B^{-1} delta (mod d).
  const RationalMatrix inv = invert_rational_matrix(RationalMatrix::from_columns(sd.generators));
  const Int d = to_int(element_order_lcm(sd.generators));
  std::vector<BasicQuasiNumber::Row> m(n, BasicQuasiNumber::Row(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = to_int(Rational(inv(i, j) * static_cast<long>(d)).get_num());
  for (const auto& [delta, q] : sd.numerator.terms()) {
    LaurentPoly p = LaurentPoly::constant(n, q);
    BasicQuasiNumber::Row c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      LaurentPoly s(n);
      for (std::size_t j = 0; j < n; ++j) s.add_term(IntVector::unit(n, j), betas[i][j]);
      s.add_term(IntVector(n), -dot(betas[i], delta));
      p *= binomial_polynomial(s, sd.multiplicities[i]);
      for (std::size_t j = 0; j < n; ++j) c[i] = checked_add(c[i], checked_mul(m[i][j], delta[j]));
    }
    auto tau = BasicQuasiNumber::make(n, m, std::move(c), d);
    out.add(*tau, p);
  }
  return out;
}

struct ChamberFormula {
  Cone chamber;
  RationalVector indicator;
  QuasiPolynomial formula;
};

/// Hyperplanes an indicator must avoid: those spanned by the inputs and by
/// every fraction support.
inline std::vector<IntVector> indicator_avoid_list(std::span<const IntVector> vectors, const PfdResult& pfd) {
  std::set<IntVector> all;
  for (const auto& h : spanned_hyperplanes(vectors)) all.insert(h);
  for (const auto& cone : pfd.cone_support)
    for (const auto& h : spanned_hyperplanes(cone)) all.insert(h);
  return {all.begin(), all.end()};
}

inline QuasiPolynomial assemble_formula(const PfdResult& pfd, std::span<const Rational> indicator,
                                        unsigned threads = 0) {
  const auto& fr = pfd.fractions.fractions;
  std::vector<QuasiPolynomial> parts(fr.size());
  parallel_for(fr.size(), threads ? threads : configured_threads(),
               [&](std::size_t i) { parts[i] = brion_vergne_term(fr[i], indicator); });
  QuasiPolynomial sum(pfd.fractions.dim);
  for (const auto& p : parts) sum += p;
  return sum;
}

inline ChamberFormula chamber_formula(const PfdResult& pfd, const Cone& chamber, std::span<const IntVector> avoid) {
  ChamberFormula cf;
  cf.chamber = chamber;
  cf.indicator = interior_point(chamber, avoid);
  cf.formula = assemble_formula(pfd, cf.indicator);
  return cf;
}

inline void check_partition_vectors(std::span<const IntVector> vectors) {
  if (vectors.empty()) fail(ErrorKind::NotFullRank, "no vectors");
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) fail(ErrorKind::DimensionMismatch, "vector dimensions differ");
    if (v.is_zero() || !v.is_nonnegative()) fail(ErrorKind::DimensionMismatch, "vectors must be nonzero and nonnegative");
  }
}

inline ChamberFormula vpf_quasipoly(std::span<const IntVector> vectors, const Cone& chamber, const Strategy& strategy) {
  check_partition_vectors(vectors);
  const PfdResult pfd = decompose(single(GeneratingFraction::product(vectors)), strategy);
  return chamber_formula(pfd, chamber, indicator_avoid_list(vectors, pfd));
}

/// Formulas for every chamber, sharing one decomposition.
inline std::vector<ChamberFormula> all_chamber_formulas(std::span<const IntVector> vectors, const Strategy& strategy,
                                                        const ChamberComplex* cx_in = nullptr) {
  check_partition_vectors(vectors);
  const ChamberComplex cx = cx_in ? *cx_in : chambers(vectors);
  const PfdResult pfd = decompose(single(GeneratingFraction::product(vectors)), strategy);
  const auto avoid = indicator_avoid_list(vectors, pfd);
  std::vector<ChamberFormula> out;
  for (const auto& c : cx.chambers) out.push_back(chamber_formula(pfd, c, avoid));
  return out;
}

/// Number of representations of every point of [0, side]^n, row-major with
/// the last coordinate fastest.
class PartitionTable {
 public:
  PartitionTable(std::span<const IntVector> vectors, Int side) : n_(vectors.empty() ? 0 : vectors.front().size()), side_(side) {
    check_partition_vectors(vectors);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n_; ++i) total *= static_cast<std::size_t>(side + 1);
    counts_.assign(total, BigInt(0));
    counts_[0] = 1;
    for (const auto& v : vectors) {
      bool fits = true;
      for (Int x : v) fits = fits && x <= side;
      if (!fits) continue;
      IntVector g(n_, 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        bool ok = true;
        for (std::size_t i = 0; i < n_; ++i) ok = ok && g[i] >= v[i];
        if (ok) counts_[idx] += counts_[index(g - v)];
        for (std::size_t i = n_; i-- > 0;) {
          if (++g[i] <= side_) break;
          g[i] = 0;
        }
      }
    }
  }

  Int side() const { return side_; }
  const BigInt& operator()(const IntVector& g) const {
    for (Int x : g)
      if (x < 0 || x > side_) fail(ErrorKind::DimensionMismatch, "point outside the table");
    return counts_[index(g)];
  }

 private:
  std::size_t index(const IntVector& g) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) idx = idx * static_cast<std::size_t>(side_ + 1) + static_cast<std::size_t>(g[i]);
    return idx;
  }
  std::size_t n_;
  Int side_;
  std::vector<BigInt> counts_;
};

/// Exact count of ways to write gamma as a nonnegative integer combination.
inline BigInt vpf_bruteforce(std::span<const IntVector> vectors, const IntVector& gamma) {
  check_partition_vectors(vectors);
  if (gamma.size() != vectors.front().size()) fail(ErrorKind::DimensionMismatch, "point dimension differs");
  if (!gamma.is_nonnegative()) return 0;
  // DP over the box [0, gamma].
  const std::size_t n = gamma.size();
  std::size_t total = 1;
  for (Int x : gamma) total *= static_cast<std::size_t>(x + 1);
  std::vector<BigInt> c(total, BigInt(0));
  c[0] = 1;
  auto index = [&](const IntVector& g) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(gamma[i] + 1) + static_cast<std::size_t>(g[i]);
    return idx;
  };
  for (const auto& v : vectors) {
    IntVector g(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) ok = ok && g[i] >= v[i];
      if (ok) c[idx] += c[index(g - v)];
      for (std::size_t i = n; i-- > 0;) {
        if (++g[i] <= gamma[i]) break;
        g[i] = 0;
      }
    }
  }
  return c[total - 1];
}

struct Mismatch {
  IntVector point;
  Rational formula;
  BigInt oracle;
};

struct VerifyReport {
  std::size_t chamber_id = 0;
  std::size_t points_tested = 0;
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Formula against the counting table on every lattice point of the chamber in the box.
inline VerifyReport verify_chamber(const ChamberFormula& cf, const PartitionTable& table, Int box_side,
                                   std::size_t chamber_id = 0) {
  VerifyReport r;
  r.chamber_id = chamber_id;
  const std::size_t n = cf.chamber.dimension;
  const Int side = std::min(box_side, table.side());
  IntVector g(n, 0);
  for (;;) {
    if (cone_contains(cf.chamber, g)) {
      ++r.points_tested;
      const Rational got = cf.formula(g);
      const BigInt& want = table(g);
      if (got != Rational(want)) r.mismatches.push_back({g, got, want});
    }
    std::size_t k = n;
    while (k-- > 0) {
      if (++g[k] <= side) break;
      g[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return r;
}

inline VerifyReport verify_chamber(const ChamberFormula& cf, std::span<const IntVector> vectors, Int box_side,
                                   std::size_t chamber_id = 0) {
  return verify_chamber(cf, PartitionTable(vectors, box_side), box_side, chamber_id);
}

/// Index of the first chamber containing the point, if any.
inline std::optional<std::size_t> locate_chamber(const ChamberComplex& cx, std::span<const Rational> p) {
  for (std::size_t i = 0; i < cx.chambers.size(); ++i)
    if (cone_contains(cx.chambers[i], p)) return i;
  return std::nullopt;
}

}  // namespace vpf
