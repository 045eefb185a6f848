// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cf/chained.hpp"
#include "cf/error.hpp"
#include "support.hpp"

namespace {

using cf::AndStrategy;
using cf::ChainedAndFilter;
using cf::ChainedAndNotFilter;

cf::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const cf::Error& e) {
    return e.code();
  }
  return static_cast<cf::ErrorCode>(0);
}

template <class F>
uint64_t errors(const F& f, const cftest::Universe& u) {
  uint64_t bad = 0;
  for (uint64_t k : u.positives) bad += !f.query(k);
  for (uint64_t k : u.negatives) bad += f.query(k);
  return bad;
}

class ExactAnd : public ::testing::TestWithParam<double> {};

TEST_P(ExactAnd, ZeroErrorsOverUniverse) {
  const double lambda = GetParam();
  const auto u = cftest::make_universe(20000, lambda, static_cast<uint64_t>(lambda * 10));
  cf::AndBuildReport rep;
  const auto f = ChainedAndFilter::build_exact(u.positives, u.negatives, {}, &rep);
  EXPECT_EQ(errors(f, u), 0u);
  EXPECT_EQ(rep.positives, u.positives.size());
  EXPECT_EQ(rep.negatives, u.negatives.size());
  EXPECT_FALSE(rep.degenerate);
  EXPECT_EQ(f.alpha(), static_cast<unsigned>(std::floor(std::log2(lambda))));
}

TEST_P(ExactAnd, AndNotZeroErrorsOverUniverse) {
  const double lambda = GetParam();
  const auto u = cftest::make_universe(20000, lambda, static_cast<uint64_t>(lambda * 10) + 1);
  cf::AndNotBuildReport rep;
  const auto f = ChainedAndNotFilter::build_exact(u.positives, u.negatives, {}, &rep);
  EXPECT_EQ(errors(f, u), 0u);
  ASSERT_FALSE(rep.layer_keys.empty());
  EXPECT_EQ(rep.layer_keys.front(), u.positives.size());
  for (size_t i = 2; i < rep.layer_keys.size(); ++i) EXPECT_LE(rep.layer_keys[i], rep.layer_keys[i - 2]);
}

INSTANTIATE_TEST_SUITE_P(Lambdas, ExactAnd, ::testing::Values(2.0, 4.0, 8.0, 15.0, 16.0));

TEST(ChainedAnd, SmallLambdaDegeneratesToSingleExact) {
  const auto u = cftest::make_universe(5000, 1.0, 21);
  cf::AndBuildReport rep;
  const auto f = ChainedAndFilter::build_exact(u.positives, u.negatives, {}, &rep);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_EQ(f.stage1_kind(), cf::Stage1Kind::kNone);
  EXPECT_EQ(errors(f, u), 0u);
}

TEST(ChainedAnd, EmptySideDegenerates) {
  const auto pos = cftest::keys(0, 1000, 22);
  cf::AndBuildReport rep;
  const auto f = ChainedAndFilter::build_exact(pos, {}, {}, &rep);
  EXPECT_TRUE(rep.degenerate);
  for (uint64_t k : pos) ASSERT_TRUE(f.query(k));
}

TEST(ChainedAnd, StageTwoLookupsEqualStageOnePasses) {
  const auto u = cftest::make_universe(20000, 16.0, 23);
  const auto f = ChainedAndFilter::build_exact(u.positives, u.negatives);
  cf::QueryStats st;
  for (uint64_t k : u.positives) f.query(k, st);
  for (uint64_t k : u.negatives) f.query(k, st);
  EXPECT_EQ(st.queries, u.positives.size() + u.negatives.size());
  EXPECT_EQ(st.stage2_lookups, st.stage1_passes);
  // Positives always pass; negatives pass with probability ~2^-alpha.
  EXPECT_GE(st.stage1_passes, u.positives.size());
  const double neg_pass = static_cast<double>(st.stage1_passes - u.positives.size()) / u.negatives.size();
  EXPECT_NEAR(neg_pass, std::ldexp(1.0, -static_cast<int>(f.alpha())), 0.01);
}

TEST(ChainedAnd, GeneralAtZeroEpsilonIsExact) {
  const auto u = cftest::make_universe(10000, 8.0, 24);
  const auto f = ChainedAndFilter::build_general(u.positives, u.negatives, 0.0);
  EXPECT_EQ(errors(f, u), 0u);
}

TEST(ChainedAnd, GeneralStrategyAFalsePositiveRate) {
  const auto u = cftest::make_universe(50000, 16.0, 25);
  cf::AndConfig cfg;
  cfg.strategy = AndStrategy::kA;
  cf::AndBuildReport rep;
  const auto f = ChainedAndFilter::build_general(u.positives, u.negatives, 0.01, cfg, &rep);
  for (uint64_t k : u.positives) ASSERT_TRUE(f.query(k));
  uint64_t fp = 0;
  for (uint64_t k : u.negatives) fp += f.query(k);
  // Unencoded survivors pass the exact stage with probability 1/2.
  const uint64_t left = rep.survivors - rep.encoded_negatives;
  EXPECT_EQ(left, static_cast<uint64_t>(std::llround(2.0 * 0.01 * 16.0 * 50000)));
  EXPECT_TRUE(cftest::within_sigma(fp, u.negatives.size(), 0.01)) << fp;
}

TEST(ChainedAnd, GeneralStrategyBWithinModelBand) {
  const auto u = cftest::make_universe(50000, 16.0, 26);
  cf::AndConfig cfg;
  cfg.strategy = AndStrategy::kB;
  cf::AndBuildReport rep;
  const auto f = ChainedAndFilter::build_general(u.positives, u.negatives, 0.01, cfg, &rep);
  EXPECT_EQ(f.strategy(), cf::bounds::Strategy::kB);
  for (uint64_t k : u.positives) ASSERT_TRUE(f.query(k));
  uint64_t fp = 0;
  for (uint64_t k : u.negatives) fp += f.query(k);
  const double model =
      static_cast<double>(rep.survivors - rep.encoded_negatives) / (f.beta() + 1.0) / u.negatives.size();
  const double rate = static_cast<double>(fp) / u.negatives.size();
  EXPECT_GE(rate, 0.5 * model);
  EXPECT_LE(rate, 1.5 * model);
}

TEST(ChainedAnd, RejectsBadEpsilon) {
  const auto u = cftest::make_universe(100, 4.0, 27);
  EXPECT_EQ(code_of([&] { ChainedAndFilter::build_general(u.positives, u.negatives, -0.1); }),
            cf::ErrorCode::kDomain);
  EXPECT_EQ(code_of([&] { ChainedAndFilter::build_general(u.positives, u.negatives, 1.5); }),
            cf::ErrorCode::kDomain);
}

class DynamicAnd : public ::testing::TestWithParam<cf::Stage1Kind> {};

TEST_P(DynamicAnd, ZeroErrorsAndUpdates) {
  const auto u = cftest::make_universe(10000, 8.0, 28);
  cf::DynamicConfig cfg;
  cfg.stage1 = GetParam();
  auto f = ChainedAndFilter::build_dynamic(u.positives, u.negatives, cfg);
  EXPECT_EQ(f.stage1_kind(), GetParam());
  EXPECT_EQ(f.stage2_kind(), cf::Stage2Kind::kOthello);
  EXPECT_EQ(errors(f, u), 0u);

  // Fresh negatives are excluded one at a time.
  const auto fresh = cftest::keys(100000, 110000, 28);
  for (uint64_t k : fresh) {
    const bool records = f.stage1(k) && f.othello()->label(k) == nullptr;
    EXPECT_EQ(f.exclude_negative(k), records);
    ASSERT_FALSE(f.query(k));
  }
  for (uint64_t k : u.positives) ASSERT_TRUE(f.query(k));
  for (uint64_t k : u.negatives) ASSERT_FALSE(f.query(k));
  for (uint64_t k : fresh) ASSERT_FALSE(f.query(k));

  // Excluding again is a no-op.
  for (uint64_t k : fresh) ASSERT_FALSE(f.exclude_negative(k));

  const auto extra = cftest::keys(200000, 201000, 28);
  for (uint64_t k : extra) f.insert_positive(k);
  for (uint64_t k : extra) ASSERT_TRUE(f.query(k));
  // New stage-1 bits may let unregistered negatives through; registered ones stay out.
  for (uint64_t k : fresh) {
    if (f.othello()->label(k)) {
      ASSERT_FALSE(f.query(k));
    }
  }
  EXPECT_EQ(f.positives(), u.positives.size() + extra.size());

  EXPECT_EQ(code_of([&] { f.exclude_negative(u.positives[0]); }), cf::ErrorCode::kConflictingLabel);
}

INSTANTIATE_TEST_SUITE_P(Stage1, DynamicAnd, ::testing::Values(cf::Stage1Kind::kBloom, cf::Stage1Kind::kCuckoo));

TEST(DynamicAnd, ExcludeRejectedByStageOneIsNoop) {
  const auto u = cftest::make_universe(2000, 8.0, 29);
  auto f = ChainedAndFilter::build_dynamic(u.positives, u.negatives);
  const uint64_t before = f.othello()->size();
  for (uint64_t k : cftest::keys(50000, 60000, 29)) {
    if (!f.stage1(k)) {
      ASSERT_FALSE(f.exclude_negative(k));
      ASSERT_FALSE(f.query(k));
    }
  }
  EXPECT_EQ(f.othello()->size(), before);
}

TEST(DynamicAnd, StaticFilterRejectsUpdates) {
  const auto u = cftest::make_universe(1000, 4.0, 30);
  auto f = ChainedAndFilter::build_exact(u.positives, u.negatives);
  EXPECT_EQ(code_of([&] { f.exclude_negative(1); }), cf::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { f.insert_positive(1); }), cf::ErrorCode::kInvalidArgument);
}

TEST(AndNot, ParityMatchesRecursiveForm) {
  const auto u = cftest::make_universe(5000, 8.0, 31);
  const auto f = ChainedAndNotFilter::build_exact(u.positives, u.negatives);
  for (uint64_t k : cftest::keys(0, 100000, 31)) ASSERT_EQ(f.query(k), cf::evaluate_andnot_recursive(f, k));
}

TEST(AndNot, ZeroDepthMeansNegative) {
  const auto u = cftest::make_universe(5000, 8.0, 32);
  const auto f = ChainedAndNotFilter::build_exact(u.positives, u.negatives);
  for (uint64_t k : cftest::keys(0, 50000, 32)) {
    if (!f.layer_accepts(0, k)) {
      ASSERT_EQ(f.depth(k), 0u);
      ASSERT_FALSE(f.query(k));
    }
  }
}

TEST(AndNot, TerminalExactVariant) {
  const auto u = cftest::make_universe(20000, 16.0, 33);
  cf::AndNotConfig cfg;
  cfg.use_terminal_exact = true;
  const auto f = ChainedAndNotFilter::build_exact(u.positives, u.negatives, cfg);
  EXPECT_TRUE(f.has_terminal());
  EXPECT_EQ(errors(f, u), 0u);
}

TEST(AndNot, SpaceWithinPracticalBound) {
  const auto u = cftest::make_universe(50000, 16.0, 34);
  const auto f = ChainedAndNotFilter::build_exact(u.positives, u.negatives);
  EXPECT_LE(f.bits_per_positive(), std::log2(std::exp(1.0)) * std::log2(16.0 * 16.0));
}

TEST(AndNot, TrainingCorrectsEveryKey) {
  const auto u = cftest::make_universe(5000, 4.0, 35);
  auto f = ChainedAndNotFilter::make_trainable(5000, 4.0, 0.5, 0, true, cf::HashSeed{35});
  for (uint64_t k : u.positives) f.seed_positive(k);
  for (int round = 0; round < 10; ++round) {
    uint64_t wrong = 0;
    for (uint64_t k : u.positives) wrong += f.train(k, true);
    for (uint64_t k : u.negatives) wrong += f.train(k, false);
    if (wrong == 0) break;
  }
  EXPECT_EQ(errors(f, u), 0u);
  EXPECT_TRUE(f.has_terminal());
}

TEST(AndNot, TrainConflictingLabels) {
  auto f = ChainedAndNotFilter::make_trainable(4, 2.0, 0.5, 2, true, cf::HashSeed{36});
  const auto ks = cftest::keys(0, 2000, 36);
  for (size_t i = 0; i < ks.size(); ++i) f.train(ks[i], i % 2 == 0);
  // Bloom bits are never cleared, so a key at the terminal stays there.
  auto it = std::find_if(ks.begin(), ks.end(), [&](uint64_t k) { return f.terminal_othello()->label(k); });
  ASSERT_NE(it, ks.end());
  const bool label = f.query(*it);
  EXPECT_EQ(code_of([&] { f.train(*it, !label); }), cf::ErrorCode::kConflictingLabel);
  EXPECT_EQ(f.query(*it), label);
}

TEST(AndNot, TrainWithoutTerminalCanRunOut) {
  auto f = ChainedAndNotFilter::make_trainable(10, 2.0, 0.5, 1, false, cf::HashSeed{37});
  f.seed_positive(9);
  EXPECT_EQ(code_of([&] { f.train(9, false); }), cf::ErrorCode::kCapacityExceeded);
}

TEST(Container, RoundTripsBothCombinators) {
  const auto u = cftest::make_universe(5000, 8.0, 38);
  const std::vector<cf::ChainedFilter> filters{
      ChainedAndFilter::build_exact(u.positives, u.negatives),
      ChainedAndFilter::build_dynamic(u.positives, u.negatives),
      ChainedAndNotFilter::build_exact(u.positives, u.negatives)};
  for (const auto& f : filters) {
    const auto bytes = cf::serialize(f);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "CFC1");
    const auto back = cf::deserialize(bytes);
    EXPECT_EQ(back.index(), f.index());
    for (uint64_t k : cftest::keys(0, 100000, 38)) ASSERT_EQ(cf::query(back, k), cf::query(f, k));
    EXPECT_EQ(cf::serialize(back), bytes);
  }
}

TEST(Container, RejectsTrailingAndTruncatedBytes) {
  const auto u = cftest::make_universe(1000, 4.0, 39);
  auto bytes = cf::serialize(ChainedAndFilter::build_exact(u.positives, u.negatives));
  auto longer = bytes;
  longer.push_back(0);
  EXPECT_EQ(code_of([&] { cf::deserialize(longer); }), cf::ErrorCode::kFormat);
  bytes.resize(bytes.size() / 2);
  EXPECT_EQ(code_of([&] { cf::deserialize(bytes); }), cf::ErrorCode::kFormat);
  const std::vector<uint8_t> junk{'X', 'Y', 'Z', 'W', 1, 2, 3};
  EXPECT_EQ(code_of([&] { cf::deserialize(junk); }), cf::ErrorCode::kFormat);
}

TEST(SplitUniverse, ValidatesMembership) {
  const auto u = cftest::keys(0, 100, 40);
  const std::vector<uint64_t> pos(u.begin(), u.begin() + 10);
  const auto neg = cf::split_universe(u, pos);
  EXPECT_EQ(neg.size(), 90u);
  EXPECT_TRUE(std::equal(neg.begin(), neg.end(), u.begin() + 10));
  const std::vector<uint64_t> outside{cftest::scramble(12345678)};
  EXPECT_EQ(code_of([&] { cf::split_universe(u, outside); }), cf::ErrorCode::kInvalidArgument);
  const std::vector<uint64_t> dup{u[0], u[0]};
  EXPECT_EQ(code_of([&] { cf::split_universe(u, dup); }), cf::ErrorCode::kDuplicateKey);
}

}  // namespace
