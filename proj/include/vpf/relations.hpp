/// @file relations.hpp
/// Integral linear relations among denominator vectors: circuit enumeration
/// and the two gaining-vector selection rules.
#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "vpf/genfunc.hpp"

namespace vpf {

/// Minimal dependent subset with its primitive kernel vector (unique up to sign).
struct Circuit {
  std::vector<std::size_t> indices;  // ascending
  std::vector<Int> kernel;           // sum kernel[k] * v[indices[k]] = 0, all nonzero
};

namespace detail {

inline void extend_circuits(std::span<const IntVector> v, std::vector<std::size_t>& current, std::size_t next,
                            std::size_t max_size, std::vector<Circuit>& out) {
  for (std::size_t j = next; j < v.size(); ++j) {
    current.push_back(j);
    std::vector<IntVector> sub;
    sub.reserve(current.size());
    for (auto i : current) sub.push_back(v[i]);
    auto ker = integer_kernel(sub);
    if (ker.empty()) {
      if (current.size() < max_size) extend_circuits(v, current, j + 1, max_size, out);
    } else {
      // current minus j is independent, so the kernel is one-dimensional.
      const auto& k = ker.front();
      if (std::all_of(k.begin(), k.end(), [](Int x) { return x != 0; })) out.push_back({current, k});
    }
    current.pop_back();
  }
}

}  // namespace detail

/// All circuits of the family, in order of discovery (lexicographic on index sets).
inline std::vector<Circuit> circuits(std::span<const IntVector> v) {
  std::vector<Circuit> out;
  if (v.empty()) return out;
  std::vector<std::size_t> current;
  const std::size_t max_size = rank(v) + 1;
  detail::extend_circuits(v, current, 0, max_size, out);
  return out;
}

/// Relation of a circuit with `pos` (position inside the circuit) as gaining vector.
inline LinearRelation relation_from_circuit(std::span<const IntVector> v, const Circuit& c, std::size_t pos) {
  LinearRelation r;
  const Int k0 = c.kernel[pos];
  r.gaining = v[c.indices[pos]];
  r.a0 = k0 < 0 ? -k0 : k0;
  const Int flip = k0 > 0 ? -1 : 1;
  for (std::size_t t = 0; t < c.indices.size(); ++t) {
    if (t == pos) continue;
    r.vectors.push_back(v[c.indices[t]]);
    r.coefficients.push_back(c.kernel[t] * flip);
  }
  return r;
}

/// Gaining vector chosen with the smallest |a0| over all circuits; ties go to
/// the lexicographically smallest vector, then the smaller circuit, then the
/// smaller index set. Absent iff the family is independent.
inline std::optional<LinearRelation> min_abs_relation(std::span<const IntVector> v) {
  const auto cs = circuits(v);
  const Circuit* best = nullptr;
  std::size_t best_pos = 0;
  for (const auto& c : cs) {
    for (std::size_t pos = 0; pos < c.indices.size(); ++pos) {
      if (!best) {
        best = &c, best_pos = pos;
        continue;
      }
      const Int a = c.kernel[pos] < 0 ? -c.kernel[pos] : c.kernel[pos];
      const Int b = best->kernel[best_pos] < 0 ? -best->kernel[best_pos] : best->kernel[best_pos];
      const auto key_new = std::tie(a, v[c.indices[pos]]);
      const auto key_old = std::tie(b, v[best->indices[best_pos]]);
      if (key_new < key_old ||
          (key_new == key_old && std::make_pair(c.indices.size(), c.indices) <
                                     std::make_pair(best->indices.size(), best->indices)))
        best = &c, best_pos = pos;
    }
  }
  if (!best) return std::nullopt;
  return relation_from_circuit(v, *best, best_pos);
}

/// Greedy scan in the given order: the first vector dependent on the vectors
/// kept so far becomes the gaining vector; its circuit supplies the relation.
inline std::optional<LinearRelation> nbc_relation(std::span<const IntVector> v) {
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < v.size(); ++j) {
    std::vector<IntVector> sub;
    for (auto i : kept) sub.push_back(v[i]);
    sub.push_back(v[j]);
    auto ker = integer_kernel(sub);
    if (ker.empty()) {
      kept.push_back(j);
      continue;
    }
    const auto& k = ker.front();
    Circuit c;
    for (std::size_t t = 0; t < k.size(); ++t)
      if (k[t] != 0) {
        c.indices.push_back(t < kept.size() ? kept[t] : j);
        c.kernel.push_back(k[t]);
      }
    return relation_from_circuit(v, c, c.indices.size() - 1);
  }
  return std::nullopt;
}

}  // namespace vpf
