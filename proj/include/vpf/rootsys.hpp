/// @file rootsys.hpp
/// Positive roots in simple-root coordinates.
///
/// Cartan convention: cartan(i, j) = <alpha_i, alpha_j^vee> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j).
/// Node numbering follows Bourbaki. For G2, alpha_1 is long and alpha_2 short, so the
/// positive roots are (1,0),(0,1),(1,1),(1,2),(1,3),(2,3).
///
/// Classical types are built from the standard orthogonal coordinates eta_i:
///   A_n: alpha_i = eta_i - eta_{i+1}            (eta in Z^{n+1})
///   B_n: alpha_i = eta_i - eta_{i+1}, alpha_n = eta_n
///   C_n: alpha_i = eta_i - eta_{i+1}, alpha_n = 2 eta_n
///   D_n: alpha_i = eta_i - eta_{i+1}, alpha_n = eta_{n-1} + eta_n
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vpf/relations.hpp"

namespace vpf {

struct RootSystem {
  char label = 'A';
  std::size_t rank = 0;
  IntMatrix cartan;
  std::vector<IntVector> positive_roots;
  /// Simple roots in eta coordinates (one column per simple root); empty for E/F/G.
  std::vector<IntVector> simple_in_eta;

  std::string name() const { return std::string(1, label) + std::to_string(rank); }
  bool classical() const { return label == 'A' || label == 'B' || label == 'C' || label == 'D'; }
};

inline std::size_t expected_root_count(char label, std::size_t n) {
  switch (label) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'G': return 6;
    case 'F': return 24;
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    default: return 0;
  }
}

inline bool valid_rank(char label, std::size_t n) {
  switch (label) {
    case 'A': return n >= 1;
    case 'B':
    case 'C': return n >= 2;
    case 'D': return n >= 4;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
  }
}

namespace detail {

inline Int eta_dot(const IntVector& a, const IntVector& b) { return a.dot(b); }

inline IntMatrix cartan_from_simple(const std::vector<IntVector>& simple) {
  const std::size_t n = simple.size();
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c(i, j) = 2 * eta_dot(simple[i], simple[j]) / eta_dot(simple[j], simple[j]);
  return c;
}

inline IntMatrix exceptional_cartan(char label, std::size_t n) {
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j) { c(i - 1, j - 1) = c(j - 1, i - 1) = -1; };
  if (label == 'E') {
    link(1, 3);
    link(2, 4);
    link(3, 4);
    for (std::size_t i = 4; i < n; ++i) link(i, i + 1);
  } else if (label == 'F') {
    link(1, 2);
    link(3, 4);
    c(1, 2) = -2;  // <alpha_2, alpha_3^vee>, alpha_2 long
    c(2, 1) = -1;
  } else {
    c(0, 1) = -3;  // <alpha_1, alpha_2^vee>, alpha_1 long
    c(1, 0) = -1;
  }
  return c;
}

}  // namespace detail

/// Positive roots generated from a Cartan matrix by root strings: beta + alpha_i is a
/// root iff r - <beta, alpha_i^vee> > 0, where r is how far the alpha_i-string
/// through beta extends downward.
inline std::vector<IntVector> roots_from_cartan(const IntMatrix& cartan) {
  const std::size_t n = cartan.rows;
  std::set<IntVector> found;
  std::vector<IntVector> layer;
  for (std::size_t i = 0; i < n; ++i) layer.push_back(IntVector::unit(n, i));
  found.insert(layer.begin(), layer.end());
  while (!layer.empty()) {
    std::vector<IntVector> next;
    for (const auto& beta : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        Int pairing = 0;
        for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * to_int(cartan(j, i));
        Int r = 0;
        IntVector down = beta - IntVector::unit(n, i);
        while (found.count(down)) {
          ++r;
          down -= IntVector::unit(n, i);
        }
        if (r - pairing > 0) {
          IntVector up = beta + IntVector::unit(n, i);
          if (found.insert(up).second) next.push_back(up);
        }
      }
    }
    layer = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// Simple coordinates of a vector given in eta coordinates; absent when the
/// vector is not an integral combination of the simple roots.
inline std::optional<IntVector> eta_to_simple(const RootSystem& rs, const IntVector& eta) {
  const auto& e = rs.simple_in_eta;
  const std::size_t n = e.size();
  // Normal equations (E^T E) c = E^T eta; E has full column rank.
  RationalMatrix g(n, n);
  RationalVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = static_cast<long>(e[i].dot(e[j]));
    rhs[i] = static_cast<long>(e[i].dot(eta));
  }
  const RationalVector c = invert_rational_matrix(g) * rhs;
  IntVector out(n);
  IntVector back(eta.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].get_den() != 1) return std::nullopt;
    out[i] = to_int(c[i].get_num());
    back += e[i] * out[i];
  }
  if (back != eta) return std::nullopt;
  return out;
}

inline IntVector simple_to_eta(const RootSystem& rs, const IntVector& simple) {
  IntVector eta(rs.simple_in_eta.front().size());
  for (std::size_t i = 0; i < simple.size(); ++i) eta += rs.simple_in_eta[i] * simple[i];
  return eta;
}

/// Positive roots of the classical type in eta coordinates.
inline std::vector<IntVector> classical_roots_eta(char label, std::size_t n) {
  const std::size_t m = label == 'A' ? n + 1 : n;
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      IntVector v(m);
      v[i] = 1;
      v[j] = -1;
      out.push_back(v);
      if (label != 'A') {
        v[j] = 1;
        out.push_back(v);
      }
    }
  if (label == 'B' || label == 'C')
    for (std::size_t i = 0; i < m; ++i) out.push_back(IntVector::unit(m, i) * (label == 'B' ? 1 : 2));
  return out;
}

inline RootSystem positive_roots(char label, std::size_t n) {
  if (!valid_rank(label, n))
    fail(ErrorKind::InvalidRank, "no root system " + std::string(1, label) + std::to_string(n));
  RootSystem rs;
  rs.label = label;
  rs.rank = n;
  if (rs.classical()) {
    const std::size_t m = label == 'A' ? n + 1 : n;
    for (std::size_t i = 0; i + 1 < n; ++i) rs.simple_in_eta.push_back(IntVector::unit(m, i) - IntVector::unit(m, i + 1));
    if (label == 'A') rs.simple_in_eta.push_back(IntVector::unit(m, n - 1) - IntVector::unit(m, n));
    if (label == 'B') rs.simple_in_eta.push_back(IntVector::unit(m, n - 1));
    if (label == 'C') rs.simple_in_eta.push_back(IntVector::unit(m, n - 1) * 2);
    if (label == 'D') rs.simple_in_eta.push_back(IntVector::unit(m, n - 2) + IntVector::unit(m, n - 1));
    rs.cartan = detail::cartan_from_simple(rs.simple_in_eta);
    for (const auto& r : classical_roots_eta(label, n)) {
      auto s = eta_to_simple(rs, r);
      if (!s) fail(ErrorKind::VectorOutsideExtendedSet, "root " + r.str() + " has no simple coordinates");
      rs.positive_roots.push_back(*s);
    }
    std::sort(rs.positive_roots.begin(), rs.positive_roots.end());
  } else {
    rs.cartan = detail::exceptional_cartan(label, n);
    rs.positive_roots = roots_from_cartan(rs.cartan);
  }
  if (rs.positive_roots.size() != expected_root_count(label, n))
    fail(ErrorKind::InvalidRank, "root count mismatch for " + rs.name());
  return rs;
}

inline FractionSum kostant_input(char label, std::size_t n) {
  const RootSystem rs = positive_roots(label, n);
  return single(GeneratingFraction::product(rs.positive_roots));
}

/// The set used by the classical reduction: positive roots, plus 2 eta_i for
/// types B and D. The order compares eta coordinates lexicographically.
struct ExtendedSet {
  RootSystem base;
  std::vector<IntVector> extra;           // simple coordinates
  std::set<IntVector> members_eta;        // all of the set, eta coordinates

  bool contains(const IntVector& simple) const { return members_eta.count(simple_to_eta(base, simple)) > 0; }
  /// a strictly precedes b.
  bool precedes(const IntVector& a, const IntVector& b) const {
    return simple_to_eta(base, a) < simple_to_eta(base, b);
  }
};

inline ExtendedSet extended_set(const RootSystem& rs) {
  if (!rs.classical()) fail(ErrorKind::VectorOutsideExtendedSet, "extended set needs a classical type");
  ExtendedSet x;
  x.base = rs;
  for (const auto& r : rs.positive_roots) x.members_eta.insert(simple_to_eta(rs, r));
  if (rs.label == 'B' || rs.label == 'D') {
    const std::size_t m = rs.simple_in_eta.front().size();
    for (std::size_t i = 0; i < m; ++i) {
      const IntVector two_eta = IntVector::unit(m, i) * 2;
      auto s = eta_to_simple(rs, two_eta);
      if (!s) fail(ErrorKind::VectorOutsideExtendedSet, "2 eta_i not integral");
      x.extra.push_back(*s);
      x.members_eta.insert(two_eta);
    }
  }
  return x;
}

/// Relation among `roots` with the smallest possible |a0|.
inline LinearRelation minimal_relation(std::span<const IntVector> roots) {
  auto r = min_abs_relation(roots);
  if (!r) fail(ErrorKind::IndependentInput, "roots are linearly independent");
  return *r;
}

}  // namespace vpf
