#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace vpf;

namespace {

Cone quadrant() { return cone_of(std::vector<IntVector>{{1, 0}, {0, 1}}); }

RationalVector rv(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<IntVector> roots(char l, std::size_t n) { return positive_roots(l, n).positive_roots; }

void expect_interior(const Cone& c, const RationalVector& p, std::span<const IntVector> avoid) {
  EXPECT_TRUE(cone_contains_strictly(c, p));
  for (const auto& h : avoid) EXPECT_NE(dot(h, p), 0);
}

}  // namespace

// ---- geometry ----

TEST(Geometry, ChamberExamples) {
  const ChamberComplex a2 = chambers(roots('A', 2));
  ASSERT_EQ(a2.chambers.size(), 2u);
  EXPECT_EQ(a2.chambers[0].generators, (std::vector<IntVector>{{0, 1}, {1, 1}}));
  EXPECT_EQ(a2.chambers[1].generators, (std::vector<IntVector>{{1, 0}, {1, 1}}));
  EXPECT_EQ(chambers(std::vector<IntVector>{{1, 0}, {0, 1}}).chambers.size(), 1u);
  EXPECT_EQ(chambers(roots('B', 2)).chambers.size(), 3u);
  EXPECT_EQ(chambers(roots('G', 2)).chambers.size(), 5u);
  try {
    chambers(std::vector<IntVector>{{1, 1}, {2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFullRank);
  }
}

TEST(Geometry, ContainmentExamples) {
  const Cone q = quadrant();
  EXPECT_TRUE(cone_contains(q, rv({1, 1})));
  EXPECT_FALSE(cone_contains(q, rv({-1, 0})));
  EXPECT_TRUE(cone_contains(q, rv({0, 1})));
  EXPECT_FALSE(cone_contains_strictly(q, rv({0, 1})));
  EXPECT_THROW(cone_contains(q, rv({1, 1, 1})), Error);
}

TEST(Geometry, InteriorPointExamples) {
  const std::vector<IntVector> diag{{1, -1}};
  expect_interior(quadrant(), interior_point(quadrant(), diag), diag);
  const Cone wedge = cone_of(std::vector<IntVector>{{1, 0}, {1, 1}});
  const RationalVector p = interior_point(wedge, {});
  EXPECT_GT(p[0], p[1]);
  EXPECT_GT(p[1], 0);
  Cone ray;
  ray.dimension = 2;
  ray.generators = {IntVector{1, 0}};
  ray.facet_normals = {IntVector{0, 1}, IntVector{0, -1}};
  try {
    interior_point(ray, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyInterior);
  }
}

TEST(Geometry, DoubleDescriptionConsistency) {
  for (const auto& [l, n] : std::vector<std::pair<char, std::size_t>>{{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}, {'B', 3}, {'C', 3}}) {
    for (const auto& c : chambers(roots(l, n)).chambers) {
      for (const auto& g : c.generators) {
        EXPECT_EQ(g, g.primitive());
        for (const auto& h : c.facet_normals) EXPECT_GE(h.dot(g), 0);
      }
      for (const auto& h : c.facet_normals) {
        EXPECT_EQ(h, h.primitive());
        std::vector<IntVector> tight;
        for (const auto& g : c.generators)
          if (h.dot(g) == 0) tight.push_back(g);
        EXPECT_EQ(rank(tight), n - 1);
      }
      EXPECT_TRUE(c.full_dimensional());
    }
  }
}

TEST(Geometry, ChambersCoverTheConeAndMeetOnWalls) {
  std::mt19937_64 rng(61);
  for (const auto& [l, n] : std::vector<std::pair<char, std::size_t>>{{'B', 2}, {'G', 2}, {'A', 3}, {'C', 3}}) {
    const auto vs = roots(l, n);
    const ChamberComplex cx = chambers(vs);
    for (int i = 0; i < 300; ++i) {
      // random nonnegative combination of the input vectors
      RationalVector p(n, Rational(0));
      for (const auto& v : vs) {
        const Rational w = make_rational(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
        for (std::size_t j = 0; j < n; ++j) p[j] += w * static_cast<long>(v[j]);
      }
      std::vector<std::size_t> hits;
      for (std::size_t c = 0; c < cx.chambers.size(); ++c)
        if (cone_contains(cx.chambers[c], p)) hits.push_back(c);
      EXPECT_GE(hits.size(), 1u);
      if (hits.size() > 1) {
        bool on_wall = false;
        for (const auto& h : cx.hyperplanes) on_wall = on_wall || dot(h, p) == 0;
        EXPECT_TRUE(on_wall);
      }
    }
  }
}

TEST(Geometry, WallsAreSpannedHyperplanes) {
  const auto vs = roots('B', 3);
  const ChamberComplex cx = chambers(vs);
  std::set<IntVector> spanned;
  for (const auto& h : spanned_hyperplanes(vs)) {
    spanned.insert(h);
    spanned.insert(-h);
  }
  for (const auto& c : cx.chambers)
    for (const auto& h : c.facet_normals) EXPECT_TRUE(spanned.count(h)) << h.str();
}

TEST(Geometry, InteriorPointsAvoidEveryListedHyperplane) {
  for (const auto& [l, n] : std::vector<std::pair<char, std::size_t>>{{'G', 2}, {'A', 3}, {'B', 3}}) {
    const ChamberComplex cx = chambers(roots(l, n));
    for (const auto& c : cx.chambers) expect_interior(c, interior_point(c, cx.hyperplanes), cx.hyperplanes);
  }
}

// ---- evaluate ----

TEST(Evaluate, DualBasisExamples) {
  EXPECT_EQ(dual_basis(std::vector<IntVector>{{1, 0}, {0, 1}}), (std::vector<RationalVector>{rv({1, 0}), rv({0, 1})}));
  EXPECT_EQ(dual_basis(std::vector<IntVector>{{1, 0}, {1, 1}}), (std::vector<RationalVector>{rv({1, -1}), rv({0, 1})}));
  const auto b = dual_basis(std::vector<IntVector>{{1, 0}, {1, 2}});
  EXPECT_EQ(b[0], (RationalVector{Rational(1), make_rational(-1, 2)}));
  EXPECT_EQ(b[1], (RationalVector{Rational(0), make_rational(1, 2)}));
  EXPECT_THROW(dual_basis(std::vector<IntVector>{{1, 1}, {2, 2}}), Error);
}

TEST(Evaluate, DualBasisIsBiorthogonal) {
  std::mt19937_64 rng(67);
  int checked = 0;
  while (checked < 50) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<IntVector> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(oracle::random_vector(rng, n, -4, 4));
    if (rank(a) != n) continue;
    const auto b = dual_basis(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(dot(b[i], a[k]), i == k ? 1 : 0);
    ++checked;
  }
}

TEST(Evaluate, BrionVergneTermExamples) {
  const RationalVector ind = rv({2, 1});
  const GeneratingFraction plain(LaurentPoly::constant(2, 1),
                                 {DenominatorFactor::from_vector(IntVector{1, 0}), DenominatorFactor::from_vector(IntVector{0, 1})});
  EXPECT_TRUE(quasipoly_equal(brion_vergne_term(plain, ind), QuasiPolynomial::constant(2, 1)));

  const GeneratingFraction doubled(LaurentPoly::constant(2, 1), {DenominatorFactor::from_vector(IntVector{1, 0}, 2),
                                                                 DenominatorFactor::from_vector(IntVector{0, 1})});
  QuasiPolynomial g1(2);
  LaurentPoly p = LaurentPoly::monomial(IntVector{1, 0});
  p.add_term(IntVector{0, 0}, 1);
  g1.add(BasicQuasiNumber::one(2), p);
  EXPECT_TRUE(quasipoly_equal(brion_vergne_term(doubled, ind), g1));

  const GeneratingFraction odd(LaurentPoly::monomial(IntVector{0, 1}),
                               {DenominatorFactor::from_vector(IntVector{1, 0}), DenominatorFactor::from_vector(IntVector{0, 2})});
  const QuasiPolynomial t = brion_vergne_term(odd, ind);
  for (Int x = 0; x <= 6; ++x)
    for (Int y = 1; y <= 6; ++y) EXPECT_EQ(t(IntVector{x, y}), y % 2) << x << "," << y;
}

TEST(Evaluate, BrionVergneTermMatchesSeriesOnTheCone) {
  // Single simplicial fractions: the term is the coefficient function of the series.
  std::mt19937_64 rng(71);
  int checked = 0;
  while (checked < 40) {
    std::vector<IntVector> g{oracle::random_vector(rng, 2, 0, 3), oracle::random_vector(rng, 2, 0, 3)};
    if (rank(g) != 2) continue;
    DenominatorList den;
    for (const auto& v : g) den.push_back(DenominatorFactor::from_vector(v, 1 + static_cast<Int>(rng() % 2)));
    const GeneratingFraction f(LaurentPoly::monomial(oracle::random_vector(rng, 2, 0, 2)), den);
    const Cone c = cone_of(g);
    const RationalVector ind = interior_point(c, spanned_hyperplanes(g));
    const QuasiPolynomial q = brion_vergne_term(f, ind);
    const LaurentPoly series = oracle::naive_series(f, 12);
    const auto delta = f.numerator.terms().begin()->first;
    for (Int x = 0; x <= 12; ++x)
      for (Int y = 0; y <= 12; ++y) {
        const IntVector gamma{x, y};
        if (!cone_contains(c, to_rational(gamma - delta))) continue;
        EXPECT_EQ(q(gamma), series.coefficient(gamma)) << gamma.str();
      }
    ++checked;
  }
}

TEST(Evaluate, IndicatorOnAWallIsRejected) {
  const GeneratingFraction f(LaurentPoly::constant(2, 1),
                             {DenominatorFactor::from_vector(IntVector{1, 0}), DenominatorFactor::from_vector(IntVector{1, 1})});
  try {
    brion_vergne_term(f, rv({2, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadIndicator);
  }
  EXPECT_TRUE(brion_vergne_term(f, rv({1, 2})).is_zero());
}

TEST(Evaluate, BruteforceExamples) {
  const auto a2 = roots('A', 2);
  EXPECT_EQ(vpf_bruteforce(a2, IntVector{1, 1}), 2);
  EXPECT_EQ(vpf_bruteforce(a2, IntVector{0, 0}), 1);
  EXPECT_EQ(vpf_bruteforce(roots('G', 2), IntVector{0, 0}), 1);
  EXPECT_EQ(vpf_bruteforce(a2, IntVector{5, 3}), 4);
  EXPECT_EQ(vpf_bruteforce(a2, IntVector{-1, 3}), 0);
  for (Int a = 0; a <= 12; ++a)
    for (Int b = 0; b <= 12; ++b) EXPECT_EQ(vpf_bruteforce(a2, IntVector{a, b}), std::min(a, b) + 1);
}

TEST(Evaluate, BruteforceAgreesWithRecursiveCount) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<IntVector> vs;
    const std::size_t k = 1 + rng() % 5;
    for (std::size_t i = 0; i < k; ++i) {
      IntVector v = oracle::random_vector(rng, n, 0, 3);
      if (v.is_zero()) v[0] = 1;
      vs.push_back(v);
    }
    const PartitionTable table(vs, 6);
    for (int i = 0; i < 20; ++i) {
      const IntVector g = oracle::random_vector(rng, n, 0, 6);
      const BigInt expect = oracle::count_representations(vs, 0, g);
      EXPECT_EQ(vpf_bruteforce(vs, g), expect);
      EXPECT_EQ(table(g), expect);
    }
  }
}

TEST(Evaluate, A2FirstChamberIsGamma2PlusOne) {
  const auto vs = roots('A', 2);
  const ChamberComplex cx = chambers(vs);
  // generators (1,0),(1,1): gamma1 >= gamma2 >= 0
  const ChamberFormula cf = vpf_quasipoly(vs, cx.chambers[1], Strategy::min_abs());
  QuasiPolynomial expect(2);
  LaurentPoly p = LaurentPoly::monomial(IntVector{0, 1});
  p.add_term(IntVector{0, 0}, 1);
  expect.add(BasicQuasiNumber::one(2), p);
  EXPECT_TRUE(quasipoly_equal(cf.formula, expect));
  EXPECT_TRUE(verify_chamber(cf, vs, 25).ok());
  EXPECT_EQ(possible_period(cf.formula), 1);
}

TEST(Evaluate, OneDimensionalRay) {
  const std::vector<IntVector> v{{1}};
  const ChamberComplex cx = chambers(v);
  ASSERT_EQ(cx.chambers.size(), 1u);
  const ChamberFormula cf = vpf_quasipoly(v, cx.chambers[0], Strategy::min_abs());
  EXPECT_TRUE(quasipoly_equal(cf.formula, QuasiPolynomial::constant(1, 1)));
  const std::vector<IntVector> w{{1}, {2}};
  const auto f = all_chamber_formulas(w, Strategy::min_abs());
  ASSERT_EQ(f.size(), 1u);
  const VerifyReport r = verify_chamber(f[0], w, 30);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.points_tested, 31u);
}

TEST(Evaluate, RankTwoSystemsMatchOracle) {
  for (char l : {'A', 'B', 'C', 'G'}) {
    const auto vs = roots(l, 2);
    const PartitionTable table(vs, 25);
    const auto formulas = all_chamber_formulas(vs, Strategy::min_abs());
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      const VerifyReport r = verify_chamber(formulas[i], table, 25, i);
      EXPECT_TRUE(r.ok()) << l << " chamber " << i << " mismatches " << r.mismatches.size();
      EXPECT_GT(r.points_tested, 0u);
    }
  }
}

TEST(Evaluate, A3MatchesOracle) {
  const auto vs = roots('A', 3);
  const PartitionTable table(vs, 10);
  const auto formulas = all_chamber_formulas(vs, Strategy::min_abs());
  for (std::size_t i = 0; i < formulas.size(); ++i) EXPECT_TRUE(verify_chamber(formulas[i], table, 10, i).ok()) << i;
}

TEST(Evaluate, CorruptedFormulaMismatchesEverywhere) {
  const auto vs = roots('A', 2);
  ChamberFormula cf = all_chamber_formulas(vs, Strategy::min_abs())[0];
  cf.formula += QuasiPolynomial::constant(2, 1);
  const VerifyReport r = verify_chamber(cf, vs, 10);
  EXPECT_GT(r.points_tested, 0u);
  EXPECT_EQ(r.mismatches.size(), r.points_tested);
}

TEST(Evaluate, AdjacentChambersAgreeOnSharedWalls) {
  for (char l : {'A', 'B', 'G'}) {
    const auto vs = roots(l, 2);
    const ChamberComplex cx = chambers(vs);
    const auto formulas = all_chamber_formulas(vs, Strategy::min_abs(), &cx);
    for (std::size_t i = 0; i < formulas.size(); ++i)
      for (std::size_t j = i + 1; j < formulas.size(); ++j) {
        if (!adjacent(cx.chambers[i], cx.chambers[j])) continue;
        int shared = 0;
        for (Int x = 0; x <= 25; ++x)
          for (Int y = 0; y <= 25; ++y) {
            const IntVector g{x, y};
            if (!cone_contains(cx.chambers[i], g) || !cone_contains(cx.chambers[j], g)) continue;
            ++shared;
            EXPECT_EQ(formulas[i].formula(g), formulas[j].formula(g)) << l << " " << g.str();
          }
        EXPECT_GT(shared, 0);
      }
  }
}

TEST(Evaluate, IndicatorChoiceDoesNotMatter) {
  for (char l : {'B', 'G'}) {
    const auto vs = roots(l, 2);
    const PfdResult pfd = decompose(single(GeneratingFraction::product(vs)), Strategy::min_abs());
    const auto avoid = indicator_avoid_list(vs, pfd);
    for (const auto& c : chambers(vs).chambers) {
      const RationalVector first = interior_point(c, avoid);
      // a second generic point: weight the generators unevenly
      RationalVector second(2, Rational(0));
      Rational w = 1;
      for (const auto& g : c.generators) {
        w = w * 3 + make_rational(1, 7);
        for (std::size_t i = 0; i < 2; ++i) second[i] += w * static_cast<long>(g[i]);
      }
      bool generic = cone_contains_strictly(c, second);
      for (const auto& h : avoid) generic = generic && dot(h, second) != 0;
      ASSERT_TRUE(generic);
      ASSERT_NE(first, second);
      EXPECT_TRUE(quasipoly_equal(assemble_formula(pfd, first), assemble_formula(pfd, second)));
    }
  }
}

TEST(Evaluate, StrategyChoiceDoesNotMatter) {
  for (const auto& [l, n] : std::vector<std::pair<char, std::size_t>>{{'B', 2}, {'C', 2}, {'G', 2}, {'A', 3}}) {
    const auto vs = roots(l, n);
    const ChamberComplex cx = chambers(vs);
    const auto a = all_chamber_formulas(vs, Strategy::min_abs(), &cx);
    const auto b = all_chamber_formulas(vs, Strategy::non_broken_circuit(), &cx);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(quasipoly_equal(a[i].formula, b[i].formula)) << l << n << " " << i;
  }
}

TEST(Evaluate, FormulasGiveNonnegativeIntegersOnTheirChambers) {
  const auto vs = roots('G', 2);
  const ChamberComplex cx = chambers(vs);
  const auto formulas = all_chamber_formulas(vs, Strategy::min_abs(), &cx);
  for (std::size_t i = 0; i < formulas.size(); ++i)
    for (Int x = 0; x <= 30; ++x)
      for (Int y = 0; y <= 30; ++y) {
        const IntVector g{x, y};
        if (!cone_contains(cx.chambers[i], g)) continue;
        const Rational v = formulas[i].formula(g);
        EXPECT_EQ(v.get_den(), 1);
        EXPECT_GE(v, 0);
      }
}

TEST(Evaluate, PeriodsOfSmallSystems) {
  const std::vector<std::tuple<char, std::size_t, Int>> cases{{'A', 2, 1}, {'A', 3, 1}, {'B', 2, 2}, {'C', 2, 2}, {'G', 2, 6}};
  for (const auto& [l, n, bound] : cases) {
    Int period = 1;
    for (const auto& cf : all_chamber_formulas(roots(l, n), Strategy::min_abs())) period = std::lcm(period, possible_period(cf.formula));
    EXPECT_EQ(bound % period, 0) << l << n << " period " << period;
  }
}

TEST(Evaluate, LocateChamber) {
  const ChamberComplex cx = chambers(roots('A', 2));
  EXPECT_EQ(locate_chamber(cx, rv({3, 1})), std::optional<std::size_t>(1));
  EXPECT_EQ(locate_chamber(cx, rv({1, 3})), std::optional<std::size_t>(0));
  EXPECT_FALSE(locate_chamber(cx, rv({-1, 3})).has_value());
}
