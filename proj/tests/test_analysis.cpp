// Critical exponent estimation, constructions, search and file formats.

#include "gdnce/ce_estimator.hpp"
#include "gdnce/constructions.hpp"
#include "gdnce/io.hpp"
#include "gdnce/oracles.hpp"
#include "gdnce/search.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gdnce;

namespace {

bool has_flag(const NegativityProfile& p, const std::string& prefix) {
  return std::any_of(p.flags.begin(), p.flags.end(),
                     [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

}  // namespace

// ---- critical exponent ------------------------------------------------------

struct BracketCase {
  const char* name;
  double reference;  // 60-digit root of the witness entry
  int wi, wj;        // 0-based witness
};

class PaperBrackets : public ::testing::TestWithParam<BracketCase> {};

TEST_P(PaperBrackets, BracketContainsReferenceRoot) {
  const auto c = GetParam();
  const auto p = estimate_ce(paper_matrix(c.name));
  ASSERT_TRUE(p.bracket);
  EXPECT_LE(p.bracket->hi - p.bracket->lo, 1e-6);
  EXPECT_LE(p.bracket->lo, c.reference);
  EXPECT_GE(p.bracket->hi, c.reference);
  EXPECT_EQ(p.witness, std::make_pair(c.wi, c.wj));
  EXPECT_TRUE(p.flags.empty());
  EXPECT_TRUE(p.invertible);
}

INSTANTIATE_TEST_SUITE_P(Examples, PaperBrackets,
                         ::testing::Values(BracketCase{"ce4", 3.9983065034146367324, 3, 0},
                                           BracketCase{"ce5", 5.9952962736959852931, 4, 1},
                                           BracketCase{"ce6", 6.9997956174661200904, 0, 2}));

TEST(CriticalExponent, PrimitivityExamplesEndAtIntegers) {
  const std::pair<const char*, double> cases[] = {{"mip4", 3.0}, {"mip5", 5.0}, {"mip6", 5.0}};
  for (const auto& [name, last] : cases) {
    const auto p = estimate_ce(paper_matrix(name));
    ASSERT_TRUE(p.bracket) << name;
    EXPECT_NEAR(p.ce_lower(), last, 1e-6) << name;
    EXPECT_NEAR(p.ce_upper(), last, 1e-6) << name;
  }
}

TEST(CriticalExponent, NonnegativePowersHaveNoBracket) {
  const auto p = estimate_ce(from_rows({{3, 1}, {1, 3}}));
  EXPECT_FALSE(p.bracket);
  EXPECT_EQ(p.ce_lower(), 0.0);
  EXPECT_TRUE(p.flags.empty());
}

TEST(CriticalExponent, RejectsNonGdn) {
  try {
    estimate_ce(from_rows({{1, 1}, {0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotGdn);
  }
}

TEST(CriticalExponent, WindowIsUpperBoundPlusOne) {
  EXPECT_DOUBLE_EQ(ce_window(5).hi, 8.0);
  EXPECT_DOUBLE_EQ(ce_window(6).hi, 13.0);
  EXPECT_GT(ce_window(6).lo, 0.0);
}

TEST(CriticalExponent, GradedWitnessNeedsMorePrecision) {
  // At 50 digits a coefficient of order 1e-40 on the top eigenvalue is lost
  // and entry (4,3) appears negative up to the window edge.
  const RealMatrix a = from_rows({{1220457.9027309855, 0, 0, 519.39778240760143, 0, 0},
                                  {9.0227597572383011, 68967.892262691414, 0, 0, 0, 0},
                                  {0, 2180.8532171496036, 0.046128752885818365, 0, 0, 0},
                                  {0, 0, 0, 0.11806176935677529, 724.49692411862611, 0},
                                  {0, 0, 0, 0, 250.17210386807426, 4.5943132514759286},
                                  {0, 0, 0.54207403249289399, 0, 0, 0.51360235864445858}});
  const auto p = estimate_ce(a);
  EXPECT_GT(p.precision_digits, 50);
  EXPECT_TRUE(p.unresolved.empty());
  EXPECT_FALSE(has_flag(p, "NegativeAtWindowEnd"));
  ASSERT_TRUE(p.bracket);
  EXPECT_NEAR(p.ce_upper(), 6.0, 1e-5);
  EXPECT_EQ(p.witness, std::make_pair(5, 2));
}

TEST(CriticalExponent, ReducibleZeroBlockIsNotUnresolved) {
  const RealMatrix a = from_rows({{50, 3, 1, 0}, {2, 40, 0, 1}, {0, 0, 2, 0.1}, {0, 0, 0.2, 1}});
  const auto p = estimate_ce(a);
  EXPECT_TRUE(p.unresolved.empty());
  EXPECT_EQ(p.precision_digits, std::numeric_limits<HighPrecision>::digits10);
  for (int i = 2; i < 4; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_TRUE(p.entry(i, j).intervals.empty());
}

TEST(CriticalExponent, ColumnEscapeOnPaperMatrices) {
  for (const char* name : {"ce4", "ce5", "ce6", "mip4", "mip5", "mip6"}) {
    const auto p = estimate_ce(paper_matrix(name));
    EXPECT_TRUE(check_column_escape(p, p.n).clean()) << name;
  }
}

TEST(CriticalExponent, CorpusProfilesRespectCapsAndBound) {
  const auto corpus = random_gdn_corpus(150, 6, 5, true);
  for (const auto& m : corpus) {
    CeOptions opt;
    opt.throw_on_inconclusive = false;
    const auto p = estimate_ce(m.a, opt);
    EXPECT_LE(p.ce_upper(), theorem_upper_bound(p.n) + 1e-6);
    EXPECT_FALSE(has_flag(p, "CapViolation"));
    EXPECT_FALSE(has_flag(p, "NegativeAtWindowEnd"));
    for (const auto& e : p.entries) {
      EXPECT_FALSE(e.inconclusive);
      EXPECT_LE(e.crossings, e.sign_changes);
      EXPECT_LE(e.sign_changes, p.n - 1);
    }
  }
}

TEST(CriticalExponent, DoublyNonnegativeStayBelowNMinusTwo) {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 60) {
    const int n = 2 + checked % 5;
    const RealMatrix a = random_doubly_nonnegative(n, rng);
    if (!validate_gdn(a).is_gdn) continue;
    EXPECT_LE(estimate_ce(a).ce_upper(), n - 2 + 1e-6);
    ++checked;
  }
}

TEST(CriticalExponent, IntervalsAgreeWithSamplingOracle) {
  const auto corpus = random_gdn_corpus(25, 5, 8);
  for (const auto& m : corpus) {
    const auto p = estimate_ce(m.a);
    const EntryPolyMatrix epm(decompose(m.a));
    for (const auto& e : p.entries) {
      const auto cmp = compare_with_oracle(e.intervals, sampled_negativity(epm(e.i, e.j), p.window, 1e-3),
                                           1e-3, 1e-10);
      EXPECT_TRUE(cmp.ok(2e-3)) << to_string(m.family) << " entry " << e.i << "," << e.j;
    }
  }
}

// ---- constructions ----------------------------------------------------------

TEST(OddCorner, SmallExample) {
  const Prop44Params p{3, {2, 1}, 0.4};
  const RealMatrix a = build_prop44(p);
  EXPECT_EQ(a, from_rows({{2, 0.4, 0}, {0, 1, 0.4}, {0.4, 0, 0}}));
  const auto v = verify_prop44(a, p);
  EXPECT_NEAR(v.det, 0.064, 1e-15);
  ASSERT_EQ(v.corner_intervals.size(), 1u);
  EXPECT_NEAR(v.corner_intervals[0].first, 1.0, 1e-6);
  EXPECT_NEAR(v.corner_intervals[0].second, 2.0, 1e-6);
  // 60-digit reference for (A^1.5)_33.
  EXPECT_NEAR(power(decompose(a), 1.5)(2, 2), -0.014451497635366607096, 1e-14);
}

TEST(OddCorner, ParameterValidation) {
  EXPECT_THROW((Prop44Params{4, {3, 2, 1}, 0.1}.check()), Error);
  EXPECT_THROW((Prop44Params{3, {1, 2}, 0.1}.check()), Error);
  EXPECT_THROW((Prop44Params{3, {2, 1}, 0.5}.check()), Error);
  EXPECT_THROW((Prop44Params{3, {2}, 0.1}.check()), Error);
  EXPECT_NO_THROW((Prop44Params{3, {2, 1}, 0.49}.check()));
}

TEST(OddCorner, RandomDrawsVerifyAndRaiseTheExponent) {
  std::mt19937_64 rng(3);
  for (int n : {3, 5, 7}) {
    for (int k = 0; k < 10; ++k) {
      const auto params = random_prop44_params(n, rng);
      const RealMatrix a = build_prop44(params);
      EXPECT_GE(*index_of_primitivity(BoolPattern::of(a)), n);
      EXPECT_GE(estimate_ce(a).ce_lower(), n - 1 - 1e-6);
    }
  }
}

TEST(Hadamard, ClosedForms) {
  const auto at1 = hadamard3_closed_form(1.0);
  EXPECT_NEAR(at1[0], 5.0, 1e-14);
  EXPECT_NEAR(at1[1], 1.0, 1e-14);
  EXPECT_NEAR(at1[2], 0.0, 1e-14);
  EXPECT_NEAR(hadamard3_closed_form(2.0)[2], -0.62347538297979919161, 1e-14);
  EXPECT_LT(hadamard3_closed_form(10.0)[2], 0.0);
}

TEST(Hadamard, ConsistentMatrixIsGdnAndMatchesClosedForms) {
  const auto rep = validate_gdn(hadamard3_consistent());
  EXPECT_TRUE(rep.is_gdn);
  const auto demo = hadamard_no_ce_demo(50.0);
  EXPECT_TRUE(demo.ok());
  EXPECT_EQ(demo.samples.size(), 1000u);
  EXPECT_LE(demo.max_relative_error, 1e-8);
}

TEST(Hadamard, PrintedMatrixIsNotGdnButAlsoGoesNegative) {
  EXPECT_FALSE(validate_gdn(paper_matrix("hadamard3")).is_gdn);
  for (const auto& s : hadamard_spectrum_trace(paper_matrix("hadamard3"), {1.0, 2.0, 10.0, 50.0}))
    EXPECT_LT(s.eigenvalues.back(), 0.0);
}

// ---- search -----------------------------------------------------------------

TEST(Search, SmallCriticalExponentIsFound) {
  SearchConfig cfg;
  cfg.n = 3;
  cfg.seed = 1;
  cfg.budget = 1500;
  const auto rec = search(cfg);
  EXPECT_TRUE(rec.revalidated);
  EXPECT_GE(rec.score, 1.9);
  EXPECT_LE(rec.ce_bracket->hi, 2.0 + 1e-6);
  EXPECT_TRUE(validate_gdn(rec.best).is_gdn);
}

TEST(Search, IsDeterministic) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.seed = 99;
  cfg.budget = 300;
  const auto a = search(cfg);
  const auto b = search(cfg);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.score, b.score);
  EXPECT_EQ(a.iterations, b.iterations);
  cfg.seed = 100;
  EXPECT_NE(search(cfg).best, a.best);
}

TEST(Search, PrimitivityTargetReachesFourForNFourAcrossRestarts) {
  // Single runs often plateau at 3; a handful of seeds is enough to reach 4.
  int best = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    SearchConfig cfg;
    cfg.n = 4;
    cfg.target = SearchTarget::MaxMip;
    cfg.seed = seed;
    cfg.budget = 1500;
    const auto rec = search(cfg);
    ASSERT_TRUE(rec.index_of_primitivity);
    EXPECT_LE(*rec.index_of_primitivity, gdn_primitivity_cap(4));
    EXPECT_TRUE(validate_gdn(rec.best).is_gdn);
    best = std::max(best, *rec.index_of_primitivity);
  }
  EXPECT_GE(best, 4);
}

TEST(Search, StartingFromCe5ReachesAboveFiveAndAHalf) {
  SearchConfig cfg;
  cfg.n = 5;
  cfg.seed = 5;
  cfg.budget = 300;
  cfg.start = paper_matrix("ce5");
  cfg.pattern = BoolPattern::of(paper_matrix("ce5"));
  EXPECT_GT(search(cfg).score, 5.5);
}

TEST(Search, ConfigValidation) {
  SearchConfig cfg;
  cfg.budget = 0;
  EXPECT_THROW(cfg.check(), Error);
  cfg.budget = 10;
  cfg.entry_lo = -1;
  EXPECT_THROW(cfg.check(), Error);
  EXPECT_THROW(search_target_from_name("max_foo"), Error);
}

TEST(Feasibility, Patterns) {
  EXPECT_EQ(pattern_feasibility(BoolPattern(3, true), 20, 1).verdict, Feasibility::FoundGdn);
  EXPECT_EQ(pattern_feasibility(BoolPattern::of(paper_matrix("ce5")), 200, 1).verdict,
            Feasibility::FoundGdn);
  // Zero trace with a positive spectrum is impossible.
  BoolPattern hollow(3, true);
  for (int i = 0; i < 3; ++i) hollow.set(i, i, false);
  const auto v = pattern_feasibility(hollow, 200, 1);
  EXPECT_EQ(v.verdict, Feasibility::NoneFound);
  EXPECT_EQ(v.trials, 200);
}

// ---- file formats -----------------------------------------------------------

TEST(Io, JsonAndCsvAgree) {
  const RealMatrix a = parse_matrix(R"({"n": 2, "data": [1, 2.5, 0, 1e3]})");
  const RealMatrix b = parse_matrix("1, 2.5\n0,1e3\n\n");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, from_rows({{1, 2.5}, {0, 1000}}));
}

TEST(Io, MatrixRoundTrip) {
  const RealMatrix a = paper_matrix("ce6");
  EXPECT_EQ(parse_matrix(to_json(a).dump()), a);
  const RealMatrix tiny = from_rows({{0.1, 1.0 / 3.0}, {1e-300, 12345.678901234567}});
  EXPECT_EQ(parse_matrix(to_json(tiny).dump()), tiny);
}

TEST(Io, ParseErrors) {
  for (const char* bad : {"", "{\"n\": 2, \"data\": [1,", "{\"n\": 2, \"data\": [1, 2, 3]}",
                          "{\"data\": [1]}", "{\"n\": 0, \"data\": []}", "1,2\n3\n", "1,x\n3,4\n",
                          "1,2,\n3,4,\n", "{\"n\": 1, \"data\": [\"a\"]}"}) {
    try {
      parse_matrix(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
      EXPECT_EQ(exit_code_for(e.code()), 64);
    }
  }
}

TEST(Io, ExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorCode::NotGdn), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::NotDiagonalizable), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::InvalidArgument), 64);
  EXPECT_EQ(exit_code_for(ErrorCode::NumericalFailure), 70);
  EXPECT_EQ(exit_code_for(ErrorCode::IsolationInconclusive), 70);
}

TEST(Io, ProfileJsonUsesOneBasedIndices) {
  const auto j = to_json(estimate_ce(paper_matrix("ce4")));
  EXPECT_EQ(j["witness"], Json::array({4, 1}));
  EXPECT_EQ(j["n"], 4);
  EXPECT_TRUE(j["tolerances"].contains("touch_tol"));
  ASSERT_FALSE(j["entries"].empty());
  for (const auto& e : j["entries"]) {
    EXPECT_GE(e["i"].get<int>(), 1);
    EXPECT_FALSE(e["intervals"].empty());
  }
  EXPECT_EQ(to_json(estimate_ce(paper_matrix("ce4")), true)["entries"].size(), 16u);
}

TEST(Io, SearchConfigRoundTrip) {
  SearchConfig c;
  c.n = 4;
  c.seed = 12345678901234ULL;
  c.target = SearchTarget::MaxMip;
  c.pattern = BoolPattern::of(paper_matrix("mip4"));
  c.tolerances.touch_tol = 1e-9;
  const auto back = search_config_from_json(to_json(c));
  EXPECT_EQ(back.n, 4);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.target, SearchTarget::MaxMip);
  ASSERT_TRUE(back.pattern);
  EXPECT_EQ(*back.pattern, *c.pattern);
  EXPECT_EQ(back.tolerances.touch_tol, 1e-9);

  EXPECT_THROW(search_config_from_json(Json{{"n", 3}}), Error);  // no seed
  EXPECT_THROW(search_config_from_json(Json{{"n", 3}, {"seed", 1}, {"colour", 2}}), Error);
  EXPECT_THROW(search_config_from_json(Json{{"n", "three"}, {"seed", 1}}), Error);
}

TEST(Io, TolerancesFromJson) {
  const auto t = tolerances_from_json(Json{{"eig_tol", 1e-7}});
  EXPECT_EQ(t.eig_tol, 1e-7);
  EXPECT_EQ(t.entry_tol, ToleranceConfig{}.entry_tol);
  EXPECT_THROW(tolerances_from_json(Json{{"eig_tol", -1.0}}), Error);
  EXPECT_THROW(tolerances_from_json(Json{{"nope", 1.0}}), Error);
}
