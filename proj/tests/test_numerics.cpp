// Core numerics: patterns, spectral decomposition, exponential polynomials,
// powers, bounds and primitivity.

#include "gdnce/bounds.hpp"
#include "gdnce/constructions.hpp"
#include "gdnce/exppoly.hpp"
#include "gdnce/oracles.hpp"
#include "gdnce/pattern.hpp"
#include "gdnce/powers.hpp"
#include "gdnce/primitivity.hpp"
#include "gdnce/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace gdnce;

namespace {

BoolPattern pattern_from(std::initializer_list<std::initializer_list<double>> rows) {
  return BoolPattern::of(from_rows(rows));
}

}  // namespace

// ---- tolerances and matrix helpers -----------------------------------------

TEST(Tolerances, DefaultsArePositiveAndChecked) {
  ToleranceConfig t;
  EXPECT_NO_THROW(t.check());
  t.touch_tol = 0.0;
  EXPECT_THROW(t.check(), Error);
  t.touch_tol = std::nan("");
  EXPECT_THROW(t.check(), Error);
}

TEST(Matrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(require_valid(RealMatrix(2, 3)), Error);
  RealMatrix a = RealMatrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(require_valid(a), Error);
  EXPECT_THROW(require_valid(RealMatrix(0, 0)), Error);
}

// ---- patterns ---------------------------------------------------------------

TEST(Pattern, AllTrueHasIndexOne) {
  EXPECT_EQ(index_of_primitivity(BoolPattern(4, true)), 1);
}

TEST(Pattern, PaperMipPatterns) {
  EXPECT_EQ(index_of_primitivity(BoolPattern::of(paper_matrix("mip4"))), 4);
  EXPECT_EQ(index_of_primitivity(BoolPattern::of(paper_matrix("mip5"))), 6);
  EXPECT_EQ(index_of_primitivity(BoolPattern::of(paper_matrix("mip6"))), 6);
}

TEST(Pattern, WielandtMatrixAttainsTheCap) {
  // Cycle 1->2->...->n->1 plus the chord n->2.
  for (int n = 3; n <= 7; ++n) {
    BoolPattern p(n);
    for (int i = 0; i + 1 < n; ++i) p.set(i, i + 1, true);
    p.set(n - 1, 0, true);
    p.set(n - 1, 1, true);
    EXPECT_EQ(index_of_primitivity(p), wielandt_bound(n)) << "n=" << n;
  }
}

TEST(Pattern, ImprimitiveAndReducibleReturnNothing) {
  // A bare cycle is irreducible but periodic.
  EXPECT_FALSE(index_of_primitivity(pattern_from({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
  EXPECT_FALSE(index_of_primitivity(pattern_from({{1, 1}, {0, 1}})));
}

TEST(Pattern, IndexMatchesBooleanPowersOnRandomPatterns) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution bit(0.35);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    BoolPattern p(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.set(i, j, bit(rng));
    const auto k = index_of_primitivity(p);
    BoolPattern q = p;
    std::optional<int> brute;
    for (int m = 1; m <= wielandt_bound(n); ++m) {
      if (q.all()) {
        brute = m;
        break;
      }
      q = q * p;
    }
    EXPECT_EQ(k, brute);
  }
}

TEST(Pattern, TarjanBlocksAreUpperTriangularAfterPermutation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const auto bm = random_reducible(n, rng);
    const auto perm = detail::random_permutation(n, rng);
    const RealMatrix a = permute(bm.a, perm);
    const auto bs = strongly_connected_blocks(BoolPattern::of(a));
    ASSERT_GE(bs.blocks.size(), 2u);
    const RealMatrix b = permute(a, bs.permutation);
    std::size_t offset = 0;
    for (const auto& blk : bs.blocks) {
      // Nothing below the diagonal block at rows [offset, offset + size).
      const auto end = offset + blk.size();
      for (std::size_t r = end; r < static_cast<std::size_t>(n); ++r)
        for (std::size_t c = offset; c < end; ++c) EXPECT_EQ(b(r, c), 0.0);
      offset = end;
    }
  }
}

TEST(Pattern, ReducibilityBlocks) {
  const auto two = reducibility_blocks(from_rows({{1, 1}, {0, 1}}));
  ASSERT_TRUE(two);
  EXPECT_EQ(two->blocks, (std::vector<std::vector<int>>{{0}, {1}}));
  EXPECT_FALSE(reducibility_blocks(RealMatrix::Ones(3, 3)));
  // Two irreducible 2x2 blocks with one coupling entry.
  const auto coupled = reducibility_blocks(
      from_rows({{1, 2, 0, 0}, {3, 1, 5, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}));
  ASSERT_TRUE(coupled);
  EXPECT_EQ(coupled->blocks, (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
}

// ---- primitivity bounds -----------------------------------------------------

TEST(Primitivity, DiagonalSupportBound) {
  BoolPattern p(5);
  for (int i = 0; i < 5; ++i) p.set(i, (i + 1) % 5, true);
  p.set(0, 0, true);
  p.set(2, 2, true);
  EXPECT_EQ(diagonal_support_bound(p), 7);
  BoolPattern full(4, true);
  EXPECT_EQ(diagonal_support_bound(full), 3);

  BoolPattern bare(3);
  for (int i = 0; i < 3; ++i) bare.set(i, (i + 1) % 3, true);
  EXPECT_THROW(diagonal_support_bound(bare), Error);
  EXPECT_THROW(diagonal_support_bound(pattern_from({{1, 1}, {0, 1}})), Error);
}

TEST(Primitivity, OddCornerPatternBound) {
  Prop44Params p{5, {4, 3, 2, 1}, 0.3};
  const auto pat = BoolPattern::of(prop44_matrix(p));
  EXPECT_EQ(diagonal_support_bound(pat), 5);
  EXPECT_GE(*index_of_primitivity(pat), 5);
}

TEST(Primitivity, TraceNecessities) {
  const RealMatrix d = RealMatrix(Eigen::Vector3d(1, 2, 3).asDiagonal());
  const auto t = gdn_trace_necessities(d);
  EXPECT_DOUBLE_EQ(t.c1, -6.0);
  EXPECT_DOUBLE_EQ(t.c2, 11.0);
  EXPECT_EQ(t.positive_diagonal, 3);
  EXPECT_TRUE(t.holds());

  const auto ce4 = gdn_trace_necessities(paper_matrix("ce4"));
  EXPECT_LT(ce4.c1, 0.0);
  EXPECT_GT(ce4.c2, 0.0);
  EXPECT_EQ(ce4.positive_diagonal, 4);
  EXPECT_EQ(gdn_trace_necessities(paper_matrix("mip5")).positive_diagonal, 2);
}

TEST(Primitivity, TraceNecessitiesPreconditions) {
  EXPECT_THROW(gdn_trace_necessities(from_rows({{1, 1}, {0, 1}})), Error);  // Jordan block
  EXPECT_THROW(gdn_trace_necessities(from_rows({{1, 1}, {1, 1}})), Error);  // eigenvalue 0
  EXPECT_THROW(gdn_trace_necessities(from_rows({{2}})), Error);
}

// ---- spectral ---------------------------------------------------------------

TEST(Spectral, DiagonalMatrix) {
  const auto sd = decompose(from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  EXPECT_EQ(sd.lambdas_double(), (std::vector<double>{3, 2, 1}));
  EXPECT_NEAR(sd.cond_s, 1.0, 1e-12);
  EXPECT_TRUE(sd.reconstruct().isApprox(from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}})));
}

TEST(Spectral, MergesRepeatedEigenvalues) {
  const auto sd = decompose(RealMatrix::Identity(4, 4) * 2.0);
  ASSERT_EQ(sd.size(), 1u);
  EXPECT_TRUE(to_double(sd.projectors[0].norm()) > 0.0);
  EXPECT_NEAR(to_double((sd.projectors[0] - MatrixOf<HighPrecision>::Identity(4, 4)).norm()), 0.0, 1e-40);
}

TEST(Spectral, ProjectorsAreIdempotentAndSumToIdentity) {
  for (const char* name : {"ce4", "ce5", "ce6", "mip4", "mip5", "mip6"}) {
    const RealMatrix a = paper_matrix(name);
    const auto sd = decompose(a);
    MatrixOf<HighPrecision> sum = MatrixOf<HighPrecision>::Zero(a.rows(), a.cols());
    for (std::size_t i = 0; i < sd.size(); ++i) {
      const auto& p = sd.projectors[i];
      EXPECT_LT(to_double((p * p - p).cwiseAbs().maxCoeff()), 1e-30) << name;
      sum += p;
    }
    EXPECT_LT(to_double((sum - MatrixOf<HighPrecision>::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff()), 1e-30);
    EXPECT_LT(inf_norm(sd.reconstruct() - a) / inf_norm(a), 1e-14) << name;
  }
}

TEST(Spectral, Ce4EigenvaluesMatchReference) {
  // 60-digit reference.
  const auto l = decompose(paper_matrix("ce4")).lambdas_double();
  ASSERT_EQ(l.size(), 4u);
  EXPECT_NEAR(l[0], 24000.000472340252731, 1e-9);
  EXPECT_NEAR(l[1], 16999.999058491270823, 1e-9);
  EXPECT_NEAR(l[2], 5.9443939235446220178, 1e-12);
  EXPECT_NEAR(l[3], 0.056075244931823555836, 1e-14);
}

TEST(Spectral, RejectsJordanBlock) {
  try {
    decompose(from_rows({{1, 1}, {0, 1}}));
    FAIL() << "expected NotDiagonalizable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDiagonalizable);
  }
}

TEST(Spectral, RejectsComplexSpectrum) {
  try {
    decompose(from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    FAIL() << "expected ComplexSpectrum";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ComplexSpectrum);
  }
}

TEST(Spectral, ValidateGdnVerdicts) {
  EXPECT_TRUE(validate_gdn(paper_matrix("ce4")).is_gdn);
  EXPECT_TRUE(validate_gdn(RealMatrix::Ones(3, 3)).is_gdn);  // eigenvalue 0 is allowed
  const auto jordan = validate_gdn(from_rows({{1, 1}, {0, 1}}));
  EXPECT_FALSE(jordan.is_gdn);
  const auto neg = validate_gdn(from_rows({{1, -1}, {0, 2}}));
  EXPECT_FALSE(neg.is_gdn);
  EXPECT_NE(std::find(neg.failures.begin(), neg.failures.end(), "NegativeEntry"), neg.failures.end());
  EXPECT_FALSE(validate_gdn(from_rows({{1, 2}, {2, 1}})).is_gdn);  // eigenvalue -1
}

TEST(Spectral, EveryPaperMatrixExceptHadamardIsGdn) {
  for (auto name : kPaperMatrixNames) {
    if (name == "hadamard3") continue;
    EXPECT_TRUE(validate_gdn(paper_matrix(name)).is_gdn) << name;
  }
  EXPECT_THROW(paper_matrix("ce7"), Error);
}

TEST(Spectral, PaperMatricesAreVerbatim) {
  EXPECT_EQ(paper_matrix("ce4"), from_rows({{1, 7, 0, 0}, {0, 17000, 8500, 0}, {0, 0, 24000, 1600}, {20, 0, 0, 5}}));
  EXPECT_EQ(paper_matrix("mip5"), from_rows({{1800, 405, 0, 0, 0},
                                             {0, 916, 794, 0, 0},
                                             {447, 0, 0, 7, 0},
                                             {0, 300, 0, 0, 15},
                                             {0, 0, 72, 0, 0}}));
  EXPECT_EQ(paper_matrix("hadamard3"), from_rows({{2, 1, 1}, {1, 1, 1}, {1, 5, 2}}));
}

TEST(Spectral, DoubleInstantiationAgrees) {
  const RealMatrix a = paper_matrix("mip4");
  const auto hp = decompose(a).lambdas_double();
  const auto dp = decompose<double>(a).lambdas_double();
  ASSERT_EQ(hp.size(), dp.size());
  for (std::size_t i = 0; i < hp.size(); ++i) EXPECT_NEAR(hp[i], dp[i], 1e-9 * hp[0]);
}

// ---- exponential polynomials -----------------------------------------------

TEST(ExpPoly, DropsNegligibleTermsAndMergesBases) {
  const ExpPoly p({{1.0, 2.0}, {1e-14, 3.0}, {0.5, 2.0}});
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_DOUBLE_EQ(p.terms()[0].coeff, 1.5);
  EXPECT_TRUE(ExpPoly({{0.0, 1.0}}).identically_zero());
  EXPECT_THROW(ExpPoly({{1.0, -1.0}}), Error);
}

TEST(ExpPoly, SignChangesSkipZeros) {
  EXPECT_EQ(sign_changes(ExpPoly({{1, 4}, {-3, 2}, {2, 1}})), 2);
  EXPECT_EQ(sign_changes(ExpPoly({{1, 3}, {2, 2}, {3, 1}})), 0);
  EXPECT_EQ(sign_changes(ExpPoly({{-1, 5}, {1, 4}, {-1, 3}, {1, 2}})), 3);
}

TEST(ExpPoly, EvaluateFactoredPolynomial) {
  // 4^a - 3 2^a + 2 = (2^a - 1)(2^a - 2)
  const ExpPoly p({{1, 4}, {-3, 2}, {2, 1}});
  for (double a : {0.25, 0.5, 1.5, 3.0, 40.0}) {
    const double x = std::pow(2.0, a);
    EXPECT_NEAR(evaluate(p, a), (x - 1) * (x - 2), 1e-12 * std::abs((x - 1) * (x - 2)) + 1e-14);
  }
}

TEST(ExpPoly, FactoredRootsAtZeroAndOne) {
  const ExpPoly p({{1, 4}, {-3, 2}, {2, 1}});
  const auto neg = negativity_intervals(p, {0.01, 5.0});
  ASSERT_EQ(neg.intervals.size(), 1u);
  EXPECT_TRUE(neg.intervals[0].starts_at_window);
  EXPECT_DOUBLE_EQ(neg.intervals[0].lo(), 0.01);
  EXPECT_NEAR(neg.intervals[0].hi(), 1.0, 1e-6);
  EXPECT_EQ(neg.isolation.crossings(), 1);
}

TEST(ExpPoly, RootAtLogThreeOfTwo) {
  // 9^a - 2 3^a vanishes at log_3 2.
  const auto iso = isolate_roots(ExpPoly({{1, 9}, {-2, 3}}), {1e-9, 5.0});
  ASSERT_EQ(iso.roots.size(), 1u);
  EXPECT_LE(iso.roots[0].hi - iso.roots[0].lo, 1e-6);
  EXPECT_LE(iso.roots[0].lo, 0.6309297535714574371);
  EXPECT_GE(iso.roots[0].hi, 0.6309297535714574371);
}

TEST(ExpPoly, DoubleRootIsReportedAsTouching) {
  // (2^a - 3)^2 = 4^a - 6 2^a + 9
  const auto iso = isolate_roots(ExpPoly({{1, 4}, {-6, 2}, {9, 1}}), {0.1, 4.0});
  ASSERT_EQ(iso.roots.size(), 1u);
  EXPECT_EQ(iso.roots[0].parity, RootParity::Touching);
  EXPECT_NEAR(iso.roots[0].mid(), std::log2(3.0), 1e-5);
  EXPECT_TRUE(negativity_intervals(ExpPoly({{1, 4}, {-6, 2}, {9, 1}}), {0.1, 4.0}).intervals.empty());
}

TEST(ExpPoly, ShallowCrossingPairsAtIntegersSurvive) {
  // Entry polynomial of a triangular GDN matrix: structural zeros at alpha = 1, 2, 3
  // with excursions only ~1e-5 of the scale between them.
  const ExpPoly p({{7.1210785688824146e-07, 19.081112838155214},
                   {-2.8876296803411673e-06, 16.004994337530047},
                   {1.5942960015852076e-05, 12.091194418735439},
                   {-1.4289145716541865e-05, 11.445559006361059},
                   {5.6474582228611625e-07, 6.2004110584872496},
                   {-4.3038298143399985e-08, 2.2105577111633825}});
  const auto neg = negativity_intervals(p, {1e-9, 13.0});
  ASSERT_EQ(neg.isolation.crossings(), 3);
  ASSERT_EQ(neg.intervals.size(), 2u);
  EXPECT_NEAR(neg.intervals[0].hi(), 1.0, 1e-6);
  EXPECT_NEAR(neg.intervals[1].lo(), 2.0, 1e-6);
  EXPECT_NEAR(neg.intervals[1].hi(), 3.0, 1e-6);
}

TEST(ExpPoly, NegativeAtWindowEnd) {
  const auto neg = negativity_intervals(ExpPoly({{-1, 3}, {1, 2}}), {0.5, 2.0});
  ASSERT_EQ(neg.intervals.size(), 1u);
  EXPECT_TRUE(neg.intervals[0].ends_at_window);
  EXPECT_DOUBLE_EQ(neg.intervals[0].hi(), 2.0);
}

TEST(ExpPoly, InvalidWindowThrows) {
  EXPECT_THROW(isolate_roots(ExpPoly({{1, 2}}), {0.0, 1.0}), Error);
  EXPECT_THROW(isolate_roots(ExpPoly({{1, 2}}), {2.0, 1.0}), Error);
}

TEST(ExpPoly, RandomPolynomialsRespectDescartesAndMatchSampling) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> lb(-2.0, 3.0);
  const Window w{1e-3, 8.0};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ExpTerm> terms;
    const int m = 2 + trial % 5;
    for (int k = 0; k < m; ++k) terms.push_back({u(rng), std::exp(lb(rng))});
    const ExpPoly p(terms);
    const auto neg = negativity_intervals(p, w);
    EXPECT_FALSE(neg.isolation.inconclusive);
    EXPECT_LE(neg.isolation.multiplicity_count(), sign_changes(p));
    for (const auto& r : neg.isolation.roots) EXPECT_LE(r.hi - r.lo, 1e-6 + 1e-12);
    const auto sampled = sampled_negativity(p, w, 1e-3);
    const auto cmp = compare_with_oracle(neg.intervals, sampled, 1e-3, 1e-10);
    EXPECT_TRUE(cmp.ok(2e-3)) << "trial " << trial << " missed " << cmp.missed << " unmatched "
                              << cmp.unmatched << " err " << cmp.max_endpoint_error;
  }
}

// ---- powers -----------------------------------------------------------------

TEST(Powers, IntegerPowersMatchProducts) {
  for (const char* name : {"ce4", "ce5", "ce6", "mip4", "mip5", "mip6"}) {
    const RealMatrix a = paper_matrix(name);
    const auto sd = decompose(a);
    RealMatrix prod = a;
    for (int k = 1; k <= 5; ++k) {
      if (k > 1) prod = prod * a;
      EXPECT_LT(inf_norm(power(sd, k) - prod) / inf_norm(prod), 1e-12) << name << " k=" << k;
    }
  }
}

TEST(Powers, SemigroupOnPaperMatrices) {
  for (const char* name : {"ce4", "mip5"}) {
    const auto sd = decompose(paper_matrix(name));
    const RealMatrix lhs = power(sd, 0.7) * power(sd, 1.6);
    const RealMatrix rhs = power(sd, 2.3);
    EXPECT_LT(inf_norm(lhs - rhs) / inf_norm(rhs), 1e-12) << name;
  }
}

TEST(Powers, EntryPolynomialsReproducePowers) {
  const auto sd = decompose(paper_matrix("ce5"));
  const EntryPolyMatrix epm(sd);
  for (double alpha : {0.3, 1.0, 2.5, 5.99, 6.5}) {
    const RealMatrix p = power(sd, alpha);
    const RealMatrix q = epm.evaluate_all(alpha);
    EXPECT_LT(inf_norm(p - q) / inf_norm(p), 1e-12) << alpha;
  }
}

TEST(Powers, Ce4EntriesMatchReference) {
  // 60-digit reference values.
  const auto sd = decompose(paper_matrix("ce4"));
  const RealMatrix half = power(sd, 0.5);
  EXPECT_NEAR(half(3, 0), 7.4768736347922289822, 1e-12);
  EXPECT_NEAR(half(0, 1), 0.0534477715305124601, 1e-14);
  EXPECT_NEAR(power(sd, 3.99)(3, 0), -13848.228163554922853, 1e-7);
}

TEST(Powers, AlphaMustBePositive) {
  const auto sd = decompose(paper_matrix("ce4"));
  EXPECT_THROW(power(sd, 0.0), Error);
  EXPECT_THROW(power(sd, -1.0), Error);
}

TEST(Powers, TrajectoryCsv) {
  const EntryPolyMatrix epm(decompose(from_rows({{4, 0}, {0, 1}})));
  const auto csv = trajectory(epm, {{0, 0}, {1, 0}}, {0.5, 1.0}, 0.5);
  EXPECT_EQ(csv,
            "alpha,i,j,value\n"
            "0.5,1,1,2\n"
            "0.5,2,1,0\n"
            "1,1,1,4\n"
            "1,2,1,0\n");
  EXPECT_EQ(format17(0.1), "0.10000000000000001");
  EXPECT_THROW(trajectory(epm, {{2, 0}}, {0.5, 1.0}, 0.5), Error);
  EXPECT_THROW(trajectory(epm, {{0, 0}}, {0.0, 1.0}, 0.5), Error);
}

TEST(Powers, HadamardPowerKeepsZeros) {
  const RealMatrix h = hadamard_power(from_rows({{4, 0}, {9, 1}}), 0.5);
  EXPECT_EQ(h, from_rows({{2, 0}, {3, 1}}));
  EXPECT_THROW(hadamard_power(from_rows({{-1, 0}, {0, 1}}), 2.0), Error);
}

TEST(Powers, DirectPowerAgreesWithProjectors) {
  const auto corpus = random_gdn_corpus(60, 5, 99, true);
  for (const auto& m : corpus) {
    const RealMatrix p = power(decompose(m.a), 1.7);
    const RealMatrix q = direct_power(m.a, 1.7);
    EXPECT_LT(inf_norm(p - q) / inf_norm(q), 1e-12);
  }
}

// ---- bounds -----------------------------------------------------------------

TEST(Bounds, UpperBoundTable) {
  const double expected[] = {0, 2, 4, 7, 12, 16};
  for (int n = 2; n <= 7; ++n) EXPECT_EQ(theorem_upper_bound(n), expected[n - 2]);
  for (int n = 2; n <= 40; ++n) EXPECT_GE(theorem_upper_bound(n), n - 2);
}

TEST(Bounds, ComponentCapAndBudget) {
  EXPECT_EQ(component_cap(0, false), 0);
  EXPECT_EQ(component_cap(0, true), 0);
  EXPECT_EQ(component_cap(3, false), 1);
  EXPECT_EQ(component_cap(4, true), 2);
  EXPECT_EQ(component_cap(1, false), 0);
  EXPECT_EQ(component_budget(3), 1);
  EXPECT_EQ(component_budget(4), 4);
  EXPECT_EQ(component_budget(5), 6);
}

TEST(Bounds, SignChangeMatrix) {
  const auto id = sign_change_matrix(EntryPolyMatrix(decompose(RealMatrix::Identity(3, 3))));
  EXPECT_EQ(id.w, std::vector<int>(9, 0));
  const auto diag = sign_change_matrix(EntryPolyMatrix(decompose(from_rows({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}}))));
  EXPECT_EQ(diag.w, std::vector<int>(9, 0));
  const auto w = sign_change_matrix(EntryPolyMatrix(decompose(paper_matrix("ce6"))));
  for (int v : w.w) {
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 5);
  }
}

TEST(Bounds, OddCornerEntryChangesSign) {
  const RealMatrix a = prop44_matrix({3, {2, 1}, 0.4});
  const auto w = sign_change_matrix(EntryPolyMatrix(decompose(a)));
  // (3,3) is zero at alpha = 1 and 2 and negative between, so it changes sign
  // at least twice.
  EXPECT_GE(w(2, 2), 2);
}
