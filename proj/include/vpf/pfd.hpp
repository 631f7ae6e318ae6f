/// @file pfd.hpp
/// Partial fraction decomposition: rewrite a sum of fractions until every
/// fraction has linearly independent denominator vectors.
///
/// The work list is processed in synchronous rounds. Fractions with equal
/// denominators are merged (numerators added) between rounds, and the relation
/// used for a given denominator support is fixed the first time that support is
/// met, either inherited from the parent or chosen by the strategy.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vpf/parallel.hpp"
#include "vpf/relations.hpp"
#include "vpf/rootsys.hpp"

namespace vpf {

struct Strategy {
  enum class Kind { MinAbsCoefficient, NonBrokenCircuit, ClassicalOrder };
  Kind kind = Kind::MinAbsCoefficient;
  char label = 'A';  // ClassicalOrder only
  std::size_t rank = 0;

  static Strategy min_abs() { return {}; }
  static Strategy non_broken_circuit() { return {Kind::NonBrokenCircuit, 'A', 0}; }
  static Strategy classical(char label, std::size_t rank) { return {Kind::ClassicalOrder, label, rank}; }
};

struct DecomposeOptions {
  /// When set, every rewrite is checked to preserve the value at this point
  /// (rewrites whose fractions have a pole there are not checked).
  std::optional<std::vector<Rational>> checksum_point;
  std::size_t max_steps = 20'000'000;
  unsigned threads = 0;  // 0: VPF_THREADS
};

struct PfdStats {
  std::size_t steps = 0;
  std::size_t rounds = 0;
  std::size_t checksums = 0;
  bool classical_fallback = false;
};

struct PfdResult {
  FractionSum fractions;
  std::vector<IntVector> support;                   // sorted, distinct
  std::vector<std::vector<IntVector>> cone_support;  // sorted, distinct generator lists
  PfdStats stats;
};

/// Absent iff the vectors are linearly independent.
inline std::optional<LinearRelation> choose_relation(std::span<const IntVector> vectors, const Strategy& s) {
  if (s.kind == Strategy::Kind::NonBrokenCircuit) return nbc_relation(vectors);
  return min_abs_relation(vectors);
}

namespace detail {

using SupportKey = std::vector<std::pair<IntVector, Int>>;  // (alpha, l) per factor

inline SupportKey support_key(const DenominatorList& d) {
  SupportKey k;
  k.reserve(d.size());
  for (const auto& f : d) k.emplace_back(f.alpha, f.elongation);
  return k;
}

inline std::size_t find_factor(const DenominatorList& d, const IntVector& v) {
  const auto key = DenominatorFactor::from_vector(v);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i].same_key(key)) return i;
  fail(ErrorKind::DimensionMismatch, "relation vector " + v.str() + " is not a denominator");
}

inline void add_factor(DenominatorList& d, const IntVector& v, Int mult) {
  auto f = DenominatorFactor::from_vector(v, mult);
  for (auto& g : d)
    if (g.same_key(f)) {
      g.multiplicity += mult;
      return;
    }
  d.push_back(std::move(f));
  std::sort(d.begin(), d.end());
}

inline void remove_one(DenominatorList& d, const IntVector& v) {
  const std::size_t i = find_factor(d, v);
  if (--d[i].multiplicity == 0) d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
}

struct Child {
  GeneratingFraction fraction;
  std::optional<LinearRelation> inherited;
};

/// One elongated Szenes-Vergne rewrite of `f` along `rel`.
inline std::vector<Child> rewrite(const GeneratingFraction& f, const LinearRelation& rel) {
  DenominatorList den = f.denominators;
  LaurentPoly num = f.numerator;
  IntVector gaining = rel.gaining;
  if (rel.a0 != 1) {
    // Elongate every copy of the gaining vector by a0.
    const std::size_t i = find_factor(den, gaining);
    const Int m0 = den[i].multiplicity;
    num *= elongation_numerator(gaining, rel.a0).pow(static_cast<unsigned>(m0));
    den.erase(den.begin() + static_cast<std::ptrdiff_t>(i));
    gaining = gaining * rel.a0;
    add_factor(den, gaining, m0);
  }
  std::vector<Child> out;
  if (rel.vectors.size() == 1 && rel.vectors[0] == gaining && rel.coefficients[0] == 1) {
    // Parallel pair merged by the elongation; nothing left to split.
    out.push_back({GeneratingFraction(std::move(num), std::move(den)), std::nullopt});
    return out;
  }
  const SupportKey parent_key = support_key(den);

  IntVector prefix(f.dim());
  for (std::size_t j = 0; j < rel.vectors.size(); ++j) {
    const IntVector& vj = rel.vectors[j];
    const Int aj = rel.coefficients[j];
    Child c;
    c.fraction.numerator = num * elongation_numerator(vj, aj).shifted(prefix);
    c.fraction.denominators = den;
    remove_one(c.fraction.denominators, vj);
    add_factor(c.fraction.denominators, gaining, 1);
    if (support_key(c.fraction.denominators) == parent_key) {
      LinearRelation r = rel;
      r.gaining = gaining;
      r.a0 = 1;
      c.inherited = std::move(r);
      c.fraction.preferred_relation = c.inherited;
    }
    prefix += vj * aj;
    if (!c.fraction.numerator.is_zero()) out.push_back(std::move(c));
  }
  return out;
}

inline std::optional<Rational> try_value(const GeneratingFraction& f, std::span<const Rational> pt) {
  try {
    return substitute_fraction(f, pt);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleHit) return std::nullopt;
    throw;
  }
}

inline void finalize(PfdResult& r) {
  std::set<IntVector> support;
  std::set<std::vector<IntVector>> cones;
  for (auto& f : r.fractions.fractions) {
    f.reduced = true;
    f.preferred_relation.reset();
    auto v = f.vectors();
    support.insert(v.begin(), v.end());
    std::sort(v.begin(), v.end());
    cones.insert(v);
  }
  r.support.assign(support.begin(), support.end());
  r.cone_support.assign(cones.begin(), cones.end());
}

inline std::vector<IntVector> check_input(const FractionSum& input) {
  std::vector<IntVector> all;
  for (const auto& f : input.fractions)
    for (const auto& d : f.denominators) {
      if (d.alpha.size() != input.dim) fail(ErrorKind::DimensionMismatch, "denominator dimension");
      all.push_back(d.vector());
    }
  return all;
}

}  // namespace detail

inline PfdResult decompose_generic(const FractionSum& input, const Strategy& strategy, const DecomposeOptions& opt = {}) {
  detail::check_input(input);
  const unsigned threads = opt.threads ? opt.threads : configured_threads();
  PfdResult result;
  std::map<DenominatorList, LaurentPoly> pending, done;
  for (const auto& f : input.fractions) {
    auto [it, inserted] = pending.try_emplace(f.denominators, f.numerator);
    if (!inserted) it->second += f.numerator;
  }
  std::map<detail::SupportKey, std::optional<LinearRelation>> relations;
  for (const auto& f : input.fractions)
    if (f.preferred_relation && f.preferred_relation->holds())
      relations.try_emplace(detail::support_key(f.denominators), f.preferred_relation);

  while (!pending.empty()) {
    ++result.stats.rounds;
    std::vector<GeneratingFraction> work;
    work.reserve(pending.size());
    for (auto& [den, num] : pending) {
      if (num.is_zero()) continue;
      GeneratingFraction f;
      f.denominators = den;
      f.numerator = std::move(num);
      work.push_back(std::move(f));
    }
    pending.clear();

    // Relations for supports not seen before; distinct supports do not interact.
    std::vector<detail::SupportKey> keys(work.size());
    std::vector<std::size_t> missing;
    std::set<detail::SupportKey> queued;
    for (std::size_t i = 0; i < work.size(); ++i) {
      keys[i] = detail::support_key(work[i].denominators);
      if (!relations.count(keys[i]) && queued.insert(keys[i]).second) missing.push_back(i);
    }
    std::vector<std::optional<LinearRelation>> chosen(missing.size());
    parallel_for(missing.size(), threads, [&](std::size_t k) {
      const auto v = work[missing[k]].vectors();
      chosen[k] = choose_relation(v, strategy);
    });
    for (std::size_t k = 0; k < missing.size(); ++k) relations.emplace(keys[missing[k]], chosen[k]);

    std::vector<std::vector<detail::Child>> children(work.size());
    std::vector<char> reduced(work.size(), 0);
    std::vector<char> bad_checksum(work.size(), 0);
    parallel_for(work.size(), threads, [&](std::size_t i) {
      const auto& rel = relations.at(keys[i]);
      if (!rel) {
        reduced[i] = 1;
        return;
      }
      children[i] = detail::rewrite(work[i], *rel);
      if (opt.checksum_point) {
        auto before = detail::try_value(work[i], *opt.checksum_point);
        if (!before) return;
        Rational after = 0;
        for (const auto& c : children[i]) {
          auto v = detail::try_value(c.fraction, *opt.checksum_point);
          if (!v) return;
          after += *v;
        }
        if (after != *before) bad_checksum[i] = 1;
      }
    });

    for (std::size_t i = 0; i < work.size(); ++i) {
      if (bad_checksum[i]) fail(ErrorKind::PoleHit, "checksum mismatch after rewrite");
      if (reduced[i]) {
        auto [it, inserted] = done.try_emplace(work[i].denominators, work[i].numerator);
        if (!inserted) it->second += work[i].numerator;
        continue;
      }
      ++result.stats.steps;
      if (opt.checksum_point) ++result.stats.checksums;
      if (result.stats.steps > opt.max_steps) fail(ErrorKind::StepLimit, "decomposition exceeded the step limit");
      for (auto& c : children[i]) {
        if (c.inherited) relations.try_emplace(detail::support_key(c.fraction.denominators), c.inherited);
        auto [it, inserted] = pending.try_emplace(c.fraction.denominators, std::move(c.fraction.numerator));
        if (!inserted) it->second += c.fraction.numerator;
      }
    }
  }

  result.fractions = FractionSum(input.dim);
  for (auto& [den, num] : done) {
    if (num.is_zero()) continue;
    GeneratingFraction f;
    f.denominators = den;
    f.numerator = std::move(num);
    result.fractions.fractions.push_back(std::move(f));
  }
  detail::finalize(result);
  return result;
}

namespace detail {

/// Step 1.1 of the classical reduction: first (a, b, n) in the fraction's
/// order with v_a - n v_b in the extended set and preceding v_b.
struct ClassicalPair {
  std::size_t a, b;
  Int n;
};

inline std::optional<ClassicalPair> classical_pair(const ExtendedSet& x, const std::vector<IntVector>& ordered) {
  for (std::size_t a = 0; a < ordered.size(); ++a)
    for (std::size_t b = 0; b < ordered.size(); ++b) {
      if (a == b) continue;
      for (Int n = 1; n <= 2; ++n) {
        const IntVector diff = ordered[a] - ordered[b] * n;
        if (diff.is_zero()) continue;
        if (x.contains(diff) && x.precedes(diff, ordered[b])) return ClassicalPair{a, b, n};
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Reduction for classical root systems: repeatedly split pairs along
/// differences inside the extended set, then fold 1/(1-x^a) into (1+x^a)/(1-x^{2a})
/// wherever both a and 2a occur. Anything still dependent afterwards is handed
/// to the generic engine (recorded in stats.classical_fallback).
inline PfdResult classical_decompose(const FractionSum& input, char label, std::size_t rank_n,
                                     const DecomposeOptions& opt = {}) {
  const RootSystem rs = positive_roots(label, rank_n);
  if (!rs.classical()) fail(ErrorKind::VectorOutsideExtendedSet, "classical reduction needs type A, B, C or D");
  const ExtendedSet x = extended_set(rs);
  for (const auto& v : detail::check_input(input))
    if (!x.contains(v)) fail(ErrorKind::VectorOutsideExtendedSet, v.str() + " is outside the extended set");

  PfdResult result;
  std::map<DenominatorList, LaurentPoly> pending, reduced;
  for (const auto& f : input.fractions) {
    auto [it, inserted] = pending.try_emplace(f.denominators, f.numerator);
    if (!inserted) it->second += f.numerator;
  }
  // Indices run from the largest element down, so order vectors by descending eta coordinates.
  auto ordered_vectors = [&](const DenominatorList& d) {
    std::vector<IntVector> v;
    for (const auto& f : d) v.push_back(f.vector());
    std::sort(v.begin(), v.end(), [&](const IntVector& p, const IntVector& q) { return x.precedes(q, p); });
    return v;
  };

  while (!pending.empty()) {
    ++result.stats.rounds;
    std::map<DenominatorList, LaurentPoly> next;
    for (auto& [den, num] : pending) {
      if (num.is_zero()) continue;
      const auto ordered = ordered_vectors(den);
      const auto pair = detail::classical_pair(x, ordered);
      if (!pair) {
        auto [it, inserted] = reduced.try_emplace(den, num);
        if (!inserted) it->second += num;
        continue;
      }
      if (++result.stats.steps > opt.max_steps) fail(ErrorKind::StepLimit, "classical reduction exceeded the step limit");
      const IntVector& va = ordered[pair->a];
      const IntVector& vb = ordered[pair->b];
      const Int la = den[detail::find_factor(den, va)].multiplicity;
      const Int mb = den[detail::find_factor(den, vb)].multiplicity;
      DenominatorList rest;
      for (const auto& f : den) {
        const IntVector v = f.vector();
        if (v != va && v != vb) rest.push_back(f);
      }
      const FractionSum split = power_two_term_split(va, vb, la, mb, pair->n);
      Rational before, after = 0;
      bool check = false;
      if (opt.checksum_point) {
        GeneratingFraction parent(num, den);
        if (auto v = detail::try_value(parent, *opt.checksum_point)) before = *v, check = true;
      }
      for (const auto& piece : split.fractions) {
        DenominatorList d = rest;
        for (const auto& f : piece.denominators) detail::add_factor(d, f.vector(), f.multiplicity);
        d = canonical_denominators(std::move(d));
        LaurentPoly p = num * piece.numerator;
        if (check) {
          if (auto v = detail::try_value(GeneratingFraction(p, d), *opt.checksum_point))
            after += *v;
          else
            check = false;
        }
        auto [it, inserted] = next.try_emplace(std::move(d), p);
        if (!inserted) it->second += p;
      }
      if (check) {
        ++result.stats.checksums;
        if (after != before) fail(ErrorKind::PoleHit, "checksum mismatch after classical rewrite");
      }
    }
    pending = std::move(next);
  }

  // Fold 1/(1-x^a)^m1 (1-x^{2a})^m2 into (1+x^a)^m1 / (1-x^{2a})^{m1+m2}.
  FractionSum folded(input.dim);
  for (auto& [den, num] : reduced) {
    if (num.is_zero()) continue;
    DenominatorList d = den;
    LaurentPoly p = num;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < d.size() && !changed; ++i)
        for (std::size_t j = 0; j < d.size() && !changed; ++j) {
          if (i == j || d[i].alpha != d[j].alpha || d[j].elongation != 2 * d[i].elongation) continue;
          LaurentPoly one_plus = LaurentPoly::constant(input.dim, 1);
          one_plus.add_term(d[i].vector(), 1);
          p *= one_plus.pow(static_cast<unsigned>(d[i].multiplicity));
          d[j].multiplicity += d[i].multiplicity;
          d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
    }
    folded.add({std::move(p), std::move(d)});
  }
  folded = merge_equal_denominators(folded);

  bool all_independent = std::all_of(folded.fractions.begin(), folded.fractions.end(),
                                     [](const GeneratingFraction& f) { return f.independent(); });
  if (!all_independent) {
    PfdResult rest = decompose_generic(folded, Strategy::min_abs(), opt);
    rest.stats.steps += result.stats.steps;
    rest.stats.rounds += result.stats.rounds;
    rest.stats.checksums += result.stats.checksums;
    rest.stats.classical_fallback = true;
    return rest;
  }
  result.fractions = std::move(folded);
  detail::finalize(result);
  return result;
}

inline PfdResult decompose(const FractionSum& input, const Strategy& strategy, const DecomposeOptions& opt = {}) {
  if (strategy.kind == Strategy::Kind::ClassicalOrder)
    return classical_decompose(input, strategy.label, strategy.rank, opt);
  return decompose_generic(input, strategy, opt);
}

}  // namespace vpf
