// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "cf/corpus.hpp"
#include "cf/cuckoo_table.hpp"
#include "cf/dict.hpp"
#include "cf/error.hpp"
#include "cf/huffman.hpp"
#include "cf/lsm.hpp"
#include "support.hpp"

namespace {

using cf::HuffmanCodebook;
using cf::RandomAccessText;

cf::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const cf::Error& e) {
    return e.code();
  }
  return static_cast<cf::ErrorCode>(0);
}

std::vector<uint32_t> chars(std::string_view s, bool nul = false) {
  std::vector<uint32_t> out(s.begin(), s.end());
  if (nul) out.push_back(0);
  return out;
}

// Optimal average code length by the textbook merge of the two lightest weights.
double huffman_cost(const std::map<uint32_t, uint64_t>& counts) {
  std::priority_queue<uint64_t, std::vector<uint64_t>, std::greater<>> q;
  uint64_t total = 0;
  for (const auto& [s, c] : counts) {
    q.push(c);
    total += c;
  }
  if (q.size() == 1) return 1.0;
  uint64_t cost = 0;
  while (q.size() > 1) {
    const uint64_t a = q.top();
    q.pop();
    const uint64_t b = q.top();
    q.pop();
    cost += a + b;
    q.push(a + b);
  }
  return static_cast<double>(cost) / total;
}

TEST(Huffman, WorkedExampleCodes) {
  const auto book = HuffmanCodebook::build(std::map<uint32_t, uint64_t>{{'a', 1}, {'b', 1}, {0, 2}});
  EXPECT_EQ(book.find('a')->code, "00");
  EXPECT_EQ(book.find('b')->code, "01");
  EXPECT_EQ(book.find(0)->code, "1");
  EXPECT_EQ(book.find('c'), nullptr);
}

TEST(Huffman, EqualCountsGiveEqualLengths) {
  const auto book = HuffmanCodebook::build(std::map<uint32_t, uint64_t>{{1, 5}, {2, 5}, {3, 5}, {4, 5}});
  for (const auto& e : book.entries()) EXPECT_EQ(e.length, 2u);
  EXPECT_DOUBLE_EQ(book.kraft_sum(), 1.0);
}

TEST(Huffman, OptimalAndPrefixFreeOnCorpora) {
  for (double omega : {1.5, 3.0, 6.0, 10.0}) {
    const auto text = cf::omega_corpus(omega, 20000, 3);
    const auto counts = cf::symbol_counts(text);
    const auto book = HuffmanCodebook::build(text);
    EXPECT_LE(book.kraft_sum(), 1.0 + 1e-12);
    const double avg = book.average_length(counts);
    EXPECT_NEAR(avg, huffman_cost(counts), 1e-9);
    const double h = cf::entropy_of(counts);
    EXPECT_GE(avg, h - 1e-12);
    EXPECT_LT(avg, h + 1.0);
    for (const auto& x : book.entries()) {
      for (const auto& y : book.entries()) {
        if (x.symbol != y.symbol) {
          ASSERT_NE(y.code.rfind(x.code, 0), 0u) << x.code << " prefixes " << y.code;
        }
      }
    }
  }
}

TEST(Huffman, FromLengthsReproducesCodes) {
  const auto book = HuffmanCodebook::build(cf::omega_corpus(4.0, 5000, 4));
  std::vector<std::pair<uint32_t, uint32_t>> lengths;
  for (const auto& e : book.entries()) lengths.emplace_back(e.symbol, e.length);
  const auto back = HuffmanCodebook::from_lengths(lengths);
  ASSERT_EQ(back.size(), book.size());
  for (const auto& e : book.entries()) EXPECT_EQ(back.find(e.symbol)->code, e.code);
}

TEST(Huffman, EmptyAndZeroCounts) {
  EXPECT_EQ(code_of([] { HuffmanCodebook::build(std::map<uint32_t, uint64_t>{}); }),
            cf::ErrorCode::kEmptyAlphabet);
  EXPECT_EQ(code_of([] { HuffmanCodebook::build(std::map<uint32_t, uint64_t>{{1, 0}}); }),
            cf::ErrorCode::kInvalidArgument);
}

TEST(Text, WorkedExampleUniverse) {
  const auto text = chars("ab", true);
  const auto book = HuffmanCodebook::build(std::map<uint32_t, uint64_t>{{'a', 1}, {'b', 1}, {0, 2}});
  std::vector<uint64_t> ones, zeros;
  RandomAccessText::split_bits(text, book, ones, zeros);
  // a=00 at i=1, b=01 at i=2, \0=1 at i=3.
  EXPECT_EQ(ones, (std::vector<uint64_t>{cf::text_key(2, 2), cf::text_key(3, 1)}));
  std::sort(zeros.begin(), zeros.end());
  EXPECT_EQ(zeros, (std::vector<uint64_t>{cf::text_key(1, 1), cf::text_key(1, 2), cf::text_key(2, 1)}));

  const auto t = RandomAccessText::encode(text, book);
  EXPECT_EQ(t.decode_at(1), 'a');
  EXPECT_EQ(t.decode_at(2), 'b');
  EXPECT_EQ(t.decode_at(3), 0u);
  EXPECT_FALSE(t.flipped());
  EXPECT_EQ(code_of([&] { t.decode_at(0); }), cf::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { t.decode_at(4); }), cf::ErrorCode::kInvalidArgument);
}

TEST(Text, SingleSymbolText) {
  const std::vector<uint32_t> text(100, 'z');
  const auto t = RandomAccessText::encode(text);
  EXPECT_EQ(t.decode_all(), text);
}

TEST(Text, RoundTripAndQueryCount) {
  const auto text = cf::omega_corpus(10.0, 20000, 5);
  const auto t = RandomAccessText::encode(text);
  EXPECT_EQ(t.length(), text.size());
  EXPECT_EQ(t.decode_all(), text);
  for (uint64_t i = 1; i <= text.size(); i += 97) {
    uint32_t q = 0;
    ASSERT_EQ(t.decode_at(i, &q), text[i - 1]);
    EXPECT_EQ(q, t.codebook().find(text[i - 1])->length);
  }
  const double h = cf::entropy_of(cf::symbol_counts(text));
  EXPECT_LT(t.bits_per_symbol(), h + 0.22 * cf::finite_size_expansion(t.code_bits(), 3) / 1.13 + 0.05);
}

TEST(Text, OnesPolarityAlsoRoundTrips) {
  const auto text = cf::omega_corpus(3.0, 5000, 6);
  cf::TextConfig cfg;
  cfg.polarity = cf::BitPolarity::kOnes;
  const auto t = RandomAccessText::encode(text, cfg);
  EXPECT_FALSE(t.flipped());
  EXPECT_EQ(t.decode_all(), text);
}

TEST(Text, SerializationRoundTrip) {
  const auto text = cf::omega_corpus(5.0, 5000, 7);
  const auto t = RandomAccessText::encode(text);
  cf::ByteWriter w;
  t.write(w);
  auto bytes = w.take();
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "CFH1");
  cf::ByteReader r(bytes);
  const auto back = RandomAccessText::read(r);
  EXPECT_TRUE(r.done());
  EXPECT_EQ(back.decode_all(), text);
  EXPECT_EQ(back.flipped(), t.flipped());
}

TEST(Text, RejectsUnknownSymbol) {
  const auto book = HuffmanCodebook::build(chars("abc"));
  EXPECT_EQ(code_of([&] { RandomAccessText::encode(chars("abd"), book); }), cf::ErrorCode::kInvalidArgument);
}

TEST(Dictionary, OverheadAtLambdaSixteen) {
  const auto u = cftest::make_universe(1000000, 16.0, 8);
  const auto d = cf::dict_build(u.positives, u.negatives);
  EXPECT_NEAR(d.entropy_per_item, static_cast<double>(cftest::entropy(1.0L / 17.0L)), 1e-12);
  EXPECT_LE(d.overhead_ratio, 1.26);
  EXPECT_NEAR(d.bound_ratio, 1.13 * 4.0 / (5.0 * std::log2(5.0) - 8.0), 1e-12);
  EXPECT_NEAR(d.bits_per_universe_item, d.filter.size_bits() / 17000000.0, 1e-12);
}

TEST(Dictionary, LambdaOneIsDegenerate) {
  const auto u = cftest::make_universe(10000, 1.0, 9);
  const auto d = cf::dict_build(u.positives, u.negatives);
  EXPECT_TRUE(d.report.degenerate);
  for (uint64_t k : u.positives) ASSERT_TRUE(d.filter.query(k));
  for (uint64_t k : u.negatives) ASSERT_FALSE(d.filter.query(k));
}

TEST(CuckooTable, InsertLookup) {
  cf::CuckooHashTable t(10000, cf::HashSeed{10});
  const auto ks = cftest::keys(0, 8000, 10);
  for (size_t i = 0; i < ks.size(); ++i) t.insert(ks[i], i);
  EXPECT_EQ(t.size(), ks.size());
  for (size_t i = 0; i < ks.size(); ++i) {
    const auto f = t.lookup(ks[i]);
    ASSERT_TRUE(f.has_value());
    ASSERT_EQ(f->payload, i);
    ASSERT_EQ(t.probe(f->table, ks[i]), i);
  }
  EXPECT_FALSE(t.lookup(cftest::scramble(999999999)).has_value());
  EXPECT_NEAR(t.negative_ratio(), static_cast<double>(t.count(0)) / t.count(1), 1e-12);
}

TEST(CuckooTable, FewRebuildsAtModerateLoad) {
  int good = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    cf::CuckooHashTable t(50000, cf::HashSeed{seed});
    for (uint64_t k : cftest::keys(0, 40000, 100 + seed)) t.insert(k, k);
    good += t.rebuilds() <= 1;
  }
  EXPECT_GE(good, 9);
}

TEST(CuckooTable, PredictorConvergesToOneProbe) {
  cf::CuckooHashTable t(50000, cf::HashSeed{11});
  const auto ks = cftest::keys(0, 40000, 11);
  for (uint64_t k : ks) t.insert(k, k ^ 1);
  cf::PredictedCuckoo p(std::move(t));
  uint32_t worst = 0;
  for (uint64_t k : ks) worst = std::max(worst, p.predicted_lookup(k).probes);
  EXPECT_LE(worst, 2u);
  std::vector<double> rates;
  const uint32_t rounds = p.train_until_exact(10, &rates);
  EXPECT_LE(rounds, 10u);
  ASSERT_FALSE(rates.empty());
  EXPECT_EQ(rates.back(), 0.0);
  for (uint64_t k : ks) {
    const auto l = p.predicted_lookup(k);
    ASSERT_EQ(l.probes, 1u);
    ASSERT_EQ(l.payload, k ^ 1);
  }
  double base = 0.0;
  for (uint64_t k : ks) base += p.baseline_lookup(k).probes;
  EXPECT_GT(base / ks.size(), 1.0);
}

TEST(CuckooTable, SimulationMatchesClosedForm) {
  const auto rep = cf::simulate_cuckoo(100000, 0.3, false, 10, 12);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.lookup_errors, 0u);
  EXPECT_EQ(rep.stored, rep.in_t1 + rep.in_t2);
  EXPECT_NEAR(rep.lambda_measured, cftest::cuckoo_lambda(0.3), 0.05 * cftest::cuckoo_lambda(0.3));
  EXPECT_DOUBLE_EQ(rep.mean_probes, 1.0);
}

std::vector<uint64_t> sorted_keys(uint64_t begin, uint64_t end, uint64_t salt) {
  auto k = cftest::keys(begin, end, salt);
  std::sort(k.begin(), k.end());
  return k;
}

TEST(Lsm, AtMostOneExtraReadAndOracleAgreement) {
  cf::LsmLevel level;
  for (uint64_t r = 0; r < 8; ++r) level.add_run(sorted_keys(r * 3000, r * 3000 + 4000, 13));
  uint32_t worst = 0;
  for (uint64_t k : cftest::keys(0, 40000, 13)) {
    const auto q = level.point_query(k, true);
    ASSERT_EQ(q.found_in, level.oracle_find(k));
    worst = std::max(worst, q.extra_reads);
    ASSERT_EQ(q.runs_read, q.extra_reads + (q.found_in ? 1u : 0u));
  }
  EXPECT_LE(worst, 1u);
}

TEST(Lsm, DisjointRunsNeedNoExtraReadsForStoredKeys) {
  cf::LsmLevel level;
  for (uint64_t r = 0; r < 5; ++r) level.add_run(sorted_keys(r * 2000, (r + 1) * 2000, 14));
  for (uint64_t k : cftest::keys(0, 10000, 14)) {
    const auto q = level.point_query(k);
    ASSERT_TRUE(q.found_in.has_value());
    ASSERT_EQ(q.runs_read, 1u);
  }
  EXPECT_EQ(level.key_count(), 10000u);
}

TEST(Lsm, RejectsUnsortedRun) {
  cf::LsmLevel level;
  EXPECT_EQ(code_of([&] { level.add_run({3, 2, 1}); }), cf::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { level.add_run({1, 1, 2}); }), cf::ErrorCode::kInvalidArgument);
}

TEST(Lsm, CompactionKeepsAnswers) {
  cf::LsmLevel level;
  for (uint64_t r = 0; r < 6; ++r) level.add_run(sorted_keys(r * 1500, r * 1500 + 2000, 15));
  level.compact({1, 2});
  EXPECT_EQ(level.run_count(), 5u);
  uint32_t worst = 0;
  for (uint64_t k : cftest::keys(0, 12000, 15)) {
    const auto q = level.point_query(k, true);
    ASSERT_EQ(q.found_in.has_value(), level.oracle_find(k).has_value());
    worst = std::max(worst, q.extra_reads);
  }
  EXPECT_LE(worst, 1u);
}

TEST(Lsm, SimulationReport) {
  const auto rep = cf::simulate_lsm(10, 5000, 20000, 16);
  EXPECT_EQ(rep.runs, 10u);
  EXPECT_LE(rep.max_extra_reads, 1u);
  EXPECT_EQ(rep.oracle_mismatches, 0u);
  EXPECT_EQ(rep.false_negatives, 0u);
}

TEST(Corpus, OmegaDistributionShape) {
  const auto p = cf::omega_distribution(4.0, 100000);
  double total = 0.0;
  for (double x : p) total += x;
  EXPECT_NEAR(total, 1.0, 1e-12);
  for (size_t i = 1; i < p.size(); ++i) EXPECT_NEAR(p[i] / p[i - 1], 4.0, 1e-9);
  EXPECT_EQ(code_of([] { cf::omega_distribution(1.0, 10); }), cf::ErrorCode::kDomain);
}

TEST(Corpus, FrequenciesFollowDistribution) {
  const auto p = cf::omega_distribution(3.0, 200000);
  const auto text = cf::omega_corpus(3.0, 200000, 17);
  const auto counts = cf::symbol_counts(text);
  for (size_t s = 0; s < p.size(); ++s) {
    const auto it = counts.find(static_cast<uint32_t>(s));
    const uint64_t c = it == counts.end() ? 0 : it->second;
    EXPECT_TRUE(cftest::within_sigma(c, text.size(), p[s], 4.0)) << s;
  }
  EXPECT_EQ(text, cf::omega_corpus(3.0, 200000, 17));
}

TEST(Corpus, DistinctKeys) {
  const auto a = cf::distinct_keys(100000, 1);
  EXPECT_EQ(std::set<uint64_t>(a.begin(), a.end()).size(), a.size());
  const auto b = cf::distinct_keys(100000, 2);
  std::set<uint64_t> both(a.begin(), a.end());
  both.insert(b.begin(), b.end());
  EXPECT_EQ(both.size(), 200000u);
}

}  // namespace
