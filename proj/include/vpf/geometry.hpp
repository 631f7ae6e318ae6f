/// @file geometry.hpp
/// Pointed rational cones in double description, the chamber complex cut out
/// by hyperplanes spanned by rank n-1 subsets, and indicator points.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "vpf/arith.hpp"
#include "vpf/error.hpp"

namespace vpf {

struct Cone {
  std::size_t dimension = 0;
  std::vector<IntVector> generators;     // primitive extreme rays, sorted
  std::vector<IntVector> facet_normals;  // primitive, pointing inward, sorted

  bool full_dimensional() const { return generators.size() >= dimension && rank(generators) == dimension; }
  friend bool operator==(const Cone&, const Cone&) = default;
};

struct ChamberComplex {
  std::vector<IntVector> vectors;
  std::vector<IntVector> hyperplanes;  // primitive normals, one sign per hyperplane
  std::vector<Cone> chambers;
};

inline Rational dot(const IntVector& h, std::span<const Rational> p) {
  if (h.size() != p.size()) fail(ErrorKind::DimensionMismatch, "point dimension differs from normal");
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (h[i] != 0) s += p[i] * static_cast<long>(h[i]);
  return s;
}

/// Primitive normal of the hyperplane spanned by `vs` (rank n-1 required),
/// sign fixed so that the first nonzero entry is positive.
inline std::optional<IntVector> spanned_normal(std::span<const IntVector> vs, std::size_t n) {
  if (vs.empty() || rank(vs) != n - 1) return std::nullopt;
  std::vector<IntVector> cols(n, IntVector(vs.size()));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < vs.size(); ++i) cols[j][i] = vs[i][j];
  const auto ker = integer_kernel(cols);
  if (ker.size() != 1) return std::nullopt;
  IntVector h(ker.front().begin(), ker.front().end());
  for (std::size_t i = 0; i < n; ++i)
    if (h[i] != 0) {
      if (h[i] < 0) h = h * Int(-1);
      break;
    }
  return h.primitive();
}

/// Every hyperplane spanned by a rank n-1 subset of the vectors.
inline std::vector<IntVector> spanned_hyperplanes(std::span<const IntVector> vectors) {
  if (vectors.empty()) return {};
  const std::size_t n = vectors.front().size();
  std::set<IntVector> out;
  if (n == 1) return {};
  // Grow independent subsets of size n-1 by index order.
  std::vector<IntVector> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == n - 1) {
      if (auto h = spanned_normal(cur, n)) out.insert(*h);
      return;
    }
    for (std::size_t j = start; j < vectors.size(); ++j) {
      cur.push_back(vectors[j]);
      if (rank(cur) == cur.size()) self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return {out.begin(), out.end()};
}

inline bool cone_contains(const Cone& c, std::span<const Rational> p) {
  if (p.size() != c.dimension) fail(ErrorKind::DimensionMismatch, "point dimension differs from cone");
  for (const auto& h : c.facet_normals)
    if (dot(h, p) < 0) return false;
  return true;
}

inline bool cone_contains(const Cone& c, const IntVector& p) {
  const auto r = to_rational(p);
  return cone_contains(c, r);
}

inline bool cone_contains_strictly(const Cone& c, std::span<const Rational> p) {
  if (p.size() != c.dimension) fail(ErrorKind::DimensionMismatch, "point dimension differs from cone");
  for (const auto& h : c.facet_normals)
    if (dot(h, p) <= 0) return false;
  return true;
}

namespace detail {

inline Int int_dot(const IntVector& a, const IntVector& b) { return a.dot(b); }

/// Drops rays that are not extreme and constraints that are not facets.
inline Cone prune_cone(std::size_t n, std::vector<IntVector> rays, std::vector<IntVector> normals) {
  std::set<IntVector> rs;
  for (auto& r : rays)
    if (!r.is_zero()) rs.insert(r.primitive());
  std::set<IntVector> hs;
  for (auto& h : normals)
    if (!h.is_zero()) hs.insert(h.primitive());

  Cone c;
  c.dimension = n;
  for (const auto& r : rs) {
    std::vector<IntVector> tight;
    for (const auto& h : hs)
      if (int_dot(h, r) == 0) tight.push_back(h);
    if (n == 1 || rank(tight) == n - 1) c.generators.push_back(r);
  }
  for (const auto& h : hs) {
    std::vector<IntVector> tight;
    for (const auto& r : c.generators)
      if (int_dot(h, r) == 0) tight.push_back(r);
    if (n == 1 || rank(tight) == n - 1) c.facet_normals.push_back(h);
  }
  return c;
}

/// Splits a full-dimensional cone by h; halves with empty interior are dropped.
inline std::vector<Cone> split_cone(const Cone& c, const IntVector& h) {
  std::vector<IntVector> pos, neg, zero;
  for (const auto& r : c.generators) {
    const Int s = int_dot(h, r);
    (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
  }
  if (pos.empty() || neg.empty()) return {c};
  std::vector<IntVector> cut = zero;
  for (const auto& p : pos)
    for (const auto& q : neg) cut.push_back(q * int_dot(h, p) - p * int_dot(h, q));
  std::vector<Cone> out;
  for (int sign : {1, -1}) {
    std::vector<IntVector> rays = cut;
    const auto& side = sign > 0 ? pos : neg;
    rays.insert(rays.end(), side.begin(), side.end());
    std::vector<IntVector> normals = c.facet_normals;
    normals.push_back(h * Int(sign));
    Cone half = prune_cone(c.dimension, std::move(rays), std::move(normals));
    if (half.full_dimensional()) out.push_back(std::move(half));
  }
  return out;
}

}  // namespace detail

/// Cone generated by the vectors (nonnegative, full rank).
inline Cone cone_of(std::span<const IntVector> vectors) {
  if (vectors.empty()) fail(ErrorKind::NotFullRank, "no vectors");
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != n) fail(ErrorKind::DimensionMismatch, "vector dimensions differ");
  if (rank(vectors) != n) fail(ErrorKind::NotFullRank, "vectors do not span the space");
  std::vector<IntVector> normals;
  if (n == 1) {
    normals.push_back(IntVector{vectors.front()[0] > 0 ? Int(1) : Int(-1)});
  } else {
    for (const auto& h : spanned_hyperplanes(vectors)) {
      bool pos = true, neg = true;
      for (const auto& v : vectors) {
        const Int s = h.dot(v);
        if (s < 0) pos = false;
        if (s > 0) neg = false;
      }
      if (pos) normals.push_back(h);
      if (neg) normals.push_back(h * Int(-1));
    }
  }
  std::vector<IntVector> rays(vectors.begin(), vectors.end());
  return detail::prune_cone(n, std::move(rays), std::move(normals));
}

/// Maximal cells of cone(vectors) cut by every spanned hyperplane, sorted by generator list.
inline ChamberComplex chambers(std::span<const IntVector> vectors) {
  ChamberComplex cx;
  cx.vectors.assign(vectors.begin(), vectors.end());
  for (const auto& v : vectors)
    if (v.is_zero() || !v.is_nonnegative()) fail(ErrorKind::DimensionMismatch, "vectors must be nonzero and nonnegative");
  Cone whole = cone_of(vectors);
  cx.hyperplanes = spanned_hyperplanes(vectors);
  std::vector<Cone> cells{whole};
  for (const auto& h : cx.hyperplanes) {
    std::vector<Cone> next;
    for (const auto& c : cells) {
      auto parts = detail::split_cone(c, h);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(), [](const Cone& a, const Cone& b) { return a.generators < b.generators; });
  cx.chambers = std::move(cells);
  return cx;
}

/// A rational point strictly inside c and off every listed hyperplane.
inline RationalVector interior_point(const Cone& c, std::span<const IntVector> avoid) {
  if (!c.full_dimensional()) fail(ErrorKind::EmptyInterior, "cone is not full-dimensional");
  const std::size_t n = c.dimension;
  auto ok = [&](const RationalVector& p) {
    if (!cone_contains_strictly(c, p)) return false;
    for (const auto& h : avoid)
      if (dot(h, p) == 0) return false;
    return true;
  };
  RationalVector p(n, Rational(0));
  for (const auto& g : c.generators)
    for (std::size_t i = 0; i < n; ++i) p[i] += static_cast<long>(g[i]);
  if (ok(p)) return p;
  // Weights 1 + s^k with s = 2^-j: h.p is a nonzero polynomial in s for every h.
  for (int j = 1; j <= 64; ++j) {
    const Rational s = make_rational(BigInt(1), BigInt(1) << static_cast<unsigned long>(j));
    RationalVector q(n, Rational(0));
    Rational w = 1;
    for (const auto& g : c.generators) {
      w *= s;
      for (std::size_t i = 0; i < n; ++i) q[i] += (1 + w) * static_cast<long>(g[i]);
    }
    if (ok(q)) return q;
  }
  fail(ErrorKind::EmptyInterior, "no generic interior point found");
}

/// Cells share a wall iff their common rays span a hyperplane.
inline bool adjacent(const Cone& a, const Cone& b) {
  std::vector<IntVector> common;
  std::set_intersection(a.generators.begin(), a.generators.end(), b.generators.begin(), b.generators.end(),
                        std::back_inserter(common));
  return !common.empty() && rank(common) + 1 == a.dimension;
}

}  // namespace vpf
