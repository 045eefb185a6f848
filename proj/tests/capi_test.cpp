// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <chainedfilter/chainedfilter.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace {

struct FilterDeleter {
  void operator()(cf_filter* f) const { cf_filter_free(f); }
};
struct TextDeleter {
  void operator()(cf_text* t) const { cf_text_free(t); }
};
using FilterPtr = std::unique_ptr<cf_filter, FilterDeleter>;
using TextPtr = std::unique_ptr<cf_text, TextDeleter>;

FilterPtr build(const cftest::Universe& u, const cf_build_options& o) {
  cf_filter* f = nullptr;
  EXPECT_EQ(cf_filter_build(u.positives.data(), u.positives.size(), u.negatives.data(), u.negatives.size(),
                            &o, &f),
            CF_OK)
      << cf_last_error();
  return FilterPtr(f);
}

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(cf_status_name(CF_OK), "Ok");
  EXPECT_STREQ(cf_status_name(CF_ERR_FORMAT), "FormatError");
  EXPECT_NE(std::string(cf_version()), "");
}

TEST(CApi, Bounds) {
  cf_bounds_report r{};
  ASSERT_EQ(cf_bounds(0.0, 16.0, &r), CF_OK);
  EXPECT_NEAR(r.lower_bound, static_cast<double>(cftest::lower_bound(0.0L, 16.0L)), 1e-12);
  EXPECT_DOUBLE_EQ(r.exact_chain, 6.0);
  EXPECT_NEAR(r.ratio, 6.0 / r.lower_bound, 1e-12);
  EXPECT_EQ(r.degenerate, 0);
  EXPECT_NEAR(r.andnot_limit, std::log2(4.0 * std::exp(1.0) * 16.0), 1e-12);
  ASSERT_EQ(cf_bounds(0.0, 1.0, &r), CF_OK);
  EXPECT_EQ(r.degenerate, 1);
  EXPECT_EQ(cf_bounds(2.0, 16.0, &r), CF_ERR_DOMAIN);
  EXPECT_EQ(cf_bounds(0.0, 16.0, nullptr), CF_ERR_INVALID_ARGUMENT);
}

TEST(CApi, BuildQueryInfoSerialize) {
  const auto u = cftest::make_universe(5000, 8.0, 1);
  for (cf_combinator c : {CF_AND, CF_ANDNOT}) {
    cf_build_options o;
    cf_build_options_init(&o);
    o.combinator = c;
    auto f = build(u, o);
    ASSERT_TRUE(f);
    for (uint64_t k : u.positives) ASSERT_EQ(cf_filter_query(f.get(), k), 1);
    for (uint64_t k : u.negatives) ASSERT_EQ(cf_filter_query(f.get(), k), 0);

    std::vector<uint8_t> res(u.negatives.size(), 9);
    ASSERT_EQ(cf_filter_query_batch(f.get(), u.negatives.data(), u.negatives.size(), res.data()), CF_OK);
    for (uint8_t b : res) ASSERT_EQ(b, 0);

    cf_filter_info info{};
    ASSERT_EQ(cf_filter_info_get(f.get(), &info), CF_OK);
    EXPECT_EQ(info.combinator, c);
    EXPECT_EQ(info.positives, 5000u);
    EXPECT_DOUBLE_EQ(info.lambda, 8.0);
    EXPECT_NEAR(info.bits_per_positive, static_cast<double>(info.size_bits) / 5000.0, 1e-12);
    if (c == CF_AND) {
      EXPECT_EQ(info.alpha, 3u);
      EXPECT_EQ(info.layers, 2u);
    }

    uint8_t* data = nullptr;
    size_t size = 0;
    ASSERT_EQ(cf_filter_serialize(f.get(), &data, &size), CF_OK);
    cf_filter* raw = nullptr;
    ASSERT_EQ(cf_filter_deserialize(data, size, &raw), CF_OK);
    FilterPtr back(raw);
    for (uint64_t k : cftest::keys(0, 50000, 1)) ASSERT_EQ(cf_filter_query(back.get(), k), cf_filter_query(f.get(), k));
    EXPECT_EQ(cf_filter_deserialize(data, size - 1, &raw), CF_ERR_FORMAT);
    EXPECT_NE(std::string(cf_last_error()), "");
    cf_buffer_free(data);
  }
}

TEST(CApi, GeneralFilterFalsePositiveRate) {
  const auto u = cftest::make_universe(20000, 16.0, 2);
  cf_build_options o;
  cf_build_options_init(&o);
  o.epsilon = 0.01;
  auto f = build(u, o);
  uint64_t fp = 0;
  for (uint64_t k : u.negatives) fp += cf_filter_query(f.get(), k);
  EXPECT_TRUE(cftest::within_sigma(fp, u.negatives.size(), 0.01, 4.0)) << fp;
}

TEST(CApi, BuildFromUniverse) {
  const auto u = cftest::make_universe(2000, 4.0, 3);
  std::vector<uint64_t> all = u.negatives;
  all.insert(all.begin() + 100, u.positives.begin(), u.positives.end());
  cf_build_options o;
  cf_build_options_init(&o);
  cf_filter* raw = nullptr;
  ASSERT_EQ(cf_filter_build_universe(all.data(), all.size(), u.positives.data(), u.positives.size(), &o, &raw),
            CF_OK);
  FilterPtr f(raw);
  for (uint64_t k : u.positives) ASSERT_EQ(cf_filter_query(f.get(), k), 1);
  for (uint64_t k : u.negatives) ASSERT_EQ(cf_filter_query(f.get(), k), 0);
  const uint64_t outside = cftest::scramble(987654321);
  EXPECT_EQ(cf_filter_build_universe(all.data(), all.size(), &outside, 1, &o, &raw), CF_ERR_INVALID_ARGUMENT);
}

TEST(CApi, RejectsDuplicatesAndNulls) {
  const std::vector<uint64_t> pos{1, 2, 2};
  const std::vector<uint64_t> neg{3, 4, 5, 6};
  cf_filter* raw = nullptr;
  EXPECT_EQ(cf_filter_build(pos.data(), pos.size(), neg.data(), neg.size(), nullptr, &raw), CF_ERR_DUPLICATE_KEY);
  EXPECT_EQ(cf_filter_build(pos.data(), pos.size(), neg.data(), neg.size(), nullptr, nullptr),
            CF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cf_filter_build(nullptr, 3, neg.data(), neg.size(), nullptr, &raw), CF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cf_filter_query_batch(nullptr, neg.data(), neg.size(), nullptr), CF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cf_filter_info_get(nullptr, nullptr), CF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cf_filter_deserialize(nullptr, 8, &raw), CF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cf_filter_deserialize(nullptr, 0, &raw), CF_ERR_FORMAT);
  EXPECT_EQ(cf_filter_query(nullptr, 1), 0);
  cf_filter_free(nullptr);
  cf_text_free(nullptr);
  cf_buffer_free(nullptr);
}

TEST(CApi, TextRoundTrip) {
  std::vector<uint32_t> text;
  for (int i = 0; i < 3000; ++i) text.push_back("abracadabra"[i % 11]);
  cf_huffman_stats stats{};
  ASSERT_EQ(cf_huffman_stats_get(text.data(), text.size(), &stats), CF_OK);
  EXPECT_EQ(stats.alphabet, 5u);
  EXPECT_GE(stats.average_length, stats.entropy);

  cf_text* raw = nullptr;
  ASSERT_EQ(cf_text_encode(text.data(), text.size(), CF_DEFAULT_SEED, &raw), CF_OK);
  TextPtr t(raw);
  cf_text_info info{};
  ASSERT_EQ(cf_text_info_get(t.get(), &info), CF_OK);
  EXPECT_EQ(info.length, text.size());
  EXPECT_EQ(info.alphabet, 5u);
  EXPECT_NEAR(info.bits_per_symbol, static_cast<double>(info.filter_bits) / text.size(), 1e-12);

  uint32_t sym = 0;
  ASSERT_EQ(cf_text_decode_at(t.get(), 4, &sym), CF_OK);
  EXPECT_EQ(sym, 'a');
  EXPECT_EQ(cf_text_decode_at(t.get(), 0, &sym), CF_ERR_INVALID_ARGUMENT);
  std::vector<uint32_t> out(text.size());
  ASSERT_EQ(cf_text_decode_all(t.get(), out.data(), out.size()), CF_OK);
  EXPECT_EQ(out, text);
  EXPECT_EQ(cf_text_decode_all(t.get(), out.data(), out.size() - 1), CF_ERR_INVALID_ARGUMENT);

  char code[256];
  ASSERT_EQ(cf_text_codebook_entry(t.get(), 0, &sym, code), CF_OK);
  EXPECT_GT(std::string(code).size(), 0u);
  EXPECT_EQ(cf_text_codebook_entry(t.get(), 5, &sym, code), CF_ERR_INVALID_ARGUMENT);

  uint8_t* data = nullptr;
  size_t size = 0;
  ASSERT_EQ(cf_text_serialize(t.get(), &data, &size), CF_OK);
  ASSERT_EQ(cf_text_deserialize(data, size, &raw), CF_OK);
  TextPtr back(raw);
  ASSERT_EQ(cf_text_decode_all(back.get(), out.data(), out.size()), CF_OK);
  EXPECT_EQ(out, text);
  cf_buffer_free(data);

  EXPECT_EQ(cf_text_encode(text.data(), 0, 1, &raw), CF_ERR_EMPTY_ALPHABET);
}

TEST(CApi, Simulations) {
  cf_cuckoo_report c{};
  ASSERT_EQ(cf_cuckoo_sim(50000, 0.3, 0, 10, 5, &c), CF_OK);
  EXPECT_EQ(c.converged, 1);
  EXPECT_EQ(c.stored, c.in_t1 + c.in_t2);
  EXPECT_DOUBLE_EQ(c.error_rate[c.rounds - 1], 0.0);
  EXPECT_EQ(cf_cuckoo_sim(50000, 0.6, 0, 10, 5, &c), CF_ERR_DOMAIN);

  cf_lsm_report l{};
  ASSERT_EQ(cf_lsm_sim(5, 2000, 10000, 6, &l), CF_OK);
  EXPECT_EQ(l.runs, 5u);
  EXPECT_LE(l.max_extra_reads, 1u);
  EXPECT_EQ(l.oracle_mismatches, 0u);
  EXPECT_EQ(l.false_negatives, 0u);
}

TEST(CApi, BenchWritesAndAppends) {
  const auto path = std::filesystem::temp_directory_path() / "cf_capi_bench.csv";
  std::filesystem::remove(path);
  const uint64_t seed = 3;
  ASSERT_EQ(cf_bench_run("lsm", 0.02, &seed, 1, path.c_str()), CF_OK);
  ASSERT_EQ(cf_bench_run("lsm", 0.02, &seed, 1, path.c_str()), CF_OK);
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "# chainedfilter bench schema v1");
  int headers = 0;
  for (const auto& l : lines) headers += l.rfind("scenario,", 0) == 0;
  EXPECT_EQ(headers, 1);
  EXPECT_EQ(cf_bench_run("nope", 1.0, &seed, 1, path.c_str()), CF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cf_bench_run("lsm", 1.0, &seed, 1, "/nonexistent-dir/x.csv"), CF_ERR_IO);
  std::filesystem::remove(path);
}

}  // namespace
