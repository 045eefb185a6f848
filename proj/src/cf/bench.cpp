// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "cf/bloomier.hpp"
#include "cf/chained.hpp"
#include "cf/corpus.hpp"
#include "cf/cuckoo_table.hpp"
#include "cf/error.hpp"
#include "cf/huffman.hpp"
#include "cf/lsm.hpp"

namespace cf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double mops(uint64_t ops, double secs) {
  return secs > 0.0 ? static_cast<double>(ops) / secs / 1e6 : 0.0;
}

uint64_t scaled(double base, double scale, uint64_t floor) {
  return std::max<uint64_t>(floor, static_cast<uint64_t>(std::llround(base * scale)));
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void dict_suite(const BenchOptions& o, uint64_t seed, std::vector<BenchRecord>& out) {
  const uint64_t n = scaled(1e5, o.scale, 1000);
  const auto positives = distinct_keys(n, seed * 2);
  AndConfig cfg;
  cfg.retrieval.seed = HashSeed{seed};
  for (uint32_t lambda = 2; lambda <= 16; ++lambda) {
    const auto negatives = distinct_keys(n * lambda, seed * 2 + 1);
    const uint64_t universe = n + negatives.size();

    auto t0 = Clock::now();
    const auto chained = ChainedAndFilter::build_exact(positives, negatives, cfg);
    const double build_s = seconds_since(t0);
    QueryStats stats;
    uint64_t errors = 0;
    t0 = Clock::now();
    for (uint64_t k : positives) errors += !chained.query(k, stats);
    for (uint64_t k : negatives) errors += chained.query(k, stats);
    const double query_s = seconds_since(t0);
    BenchRecord r;
    r.scenario = "dict/chained";
    r.n = n;
    r.lambda = lambda;
    r.bits_per_item = chained.bits_per_positive();
    r.space_mb = static_cast<double>(chained.size_bits()) / 1e6;
    r.construct_mops = mops(universe, build_s);
    r.query_mops = mops(universe, query_s);
    r.errors = errors;
    r.stage2_touch = static_cast<double>(stats.stage2_lookups) / static_cast<double>(stats.queries);
    r.seed = seed;
    out.push_back(r);

    t0 = Clock::now();
    const auto single = ExactBloomier::build(positives, negatives, FingerprintStrategy::kCoinFlip,
                                             cfg.retrieval);
    const double single_build_s = seconds_since(t0);
    errors = 0;
    t0 = Clock::now();
    for (uint64_t k : positives) errors += !single.contains(k);
    for (uint64_t k : negatives) errors += single.contains(k);
    const double single_query_s = seconds_since(t0);
    BenchRecord s;
    s.scenario = "dict/single";
    s.n = n;
    s.lambda = lambda;
    s.bits_per_item = static_cast<double>(single.size_bits()) / static_cast<double>(n);
    s.space_mb = static_cast<double>(single.size_bits()) / 1e6;
    s.construct_mops = mops(universe, single_build_s);
    s.query_mops = mops(universe, single_query_s);
    s.errors = errors;
    s.stage2_touch = 1.0;
    s.seed = seed;
    out.push_back(s);

    if (lambda == 16) {
      constexpr double kEps = 0.01;
      t0 = Clock::now();
      const auto general = ChainedAndFilter::build_general(positives, negatives, kEps, cfg);
      const double general_build_s = seconds_since(t0);
      uint64_t fn = 0, fp = 0;
      QueryStats gs;
      t0 = Clock::now();
      for (uint64_t k : positives) fn += !general.query(k, gs);
      for (uint64_t k : negatives) fp += general.query(k, gs);
      const double general_query_s = seconds_since(t0);
      BenchRecord g;
      g.scenario = "dict/general";
      g.n = n;
      g.lambda = lambda;
      g.epsilon = kEps;
      g.bits_per_item = general.bits_per_positive();
      g.space_mb = static_cast<double>(general.size_bits()) / 1e6;
      g.construct_mops = mops(universe, general_build_s);
      g.query_mops = mops(universe, general_query_s);
      g.fpr_measured = static_cast<double>(fp) / static_cast<double>(negatives.size());
      g.errors = fn;
      g.stage2_touch = static_cast<double>(gs.stage2_lookups) / static_cast<double>(gs.queries);
      g.seed = seed;
      out.push_back(g);
    }
  }
}

void huffman_suite(const BenchOptions& o, uint64_t seed, std::vector<BenchRecord>& out) {
  const uint64_t length = scaled(1e5, o.scale, 1000);
  for (int omega = 3; omega <= 10; ++omega) {
    const auto text = omega_corpus(omega, length, seed);
    TextConfig cfg;
    cfg.filter.retrieval.seed = HashSeed{seed};
    auto t0 = Clock::now();
    const auto encoded = RandomAccessText::encode(text, cfg);
    const double build_s = seconds_since(t0);
    t0 = Clock::now();
    const auto decoded = encoded.decode_all();
    const double query_s = seconds_since(t0);
    uint64_t errors = 0;
    for (uint64_t i = 0; i < length; ++i) errors += decoded[i] != text[i];
    BenchRecord r;
    r.scenario = "huffman/omega=" + std::to_string(omega);
    r.n = length;
    r.lambda = encoded.filter().lambda();
    r.bits_per_item = encoded.bits_per_symbol();
    r.space_mb = static_cast<double>(encoded.filter().size_bits()) / 1e6;
    r.construct_mops = mops(length, build_s);
    r.query_mops = mops(length, query_s);
    r.errors = errors;
    r.seed = seed;
    out.push_back(r);
  }
}

void cuckoo_suite(const BenchOptions& o, uint64_t seed, std::vector<BenchRecord>& out) {
  const uint64_t m = scaled(5e5, o.scale, 1000);
  for (double r : {0.1, 0.2, 0.3, 0.4}) {
    for (bool terminal : {false, true}) {
      const auto sim = simulate_cuckoo(m, r, terminal, 20, seed);
      BenchRecord b;
      b.scenario = std::string(terminal ? "cuckoo+othello" : "cuckoo") + fmt("/r=%.2f", r);
      b.n = sim.stored;
      b.lambda = sim.lambda_measured;
      b.bits_per_item = sim.in_t2 ? static_cast<double>(sim.predictor_bits) / static_cast<double>(sim.in_t2) : 0.0;
      b.space_mb = static_cast<double>(sim.predictor_bits) / 1e6;
      b.construct_mops = mops(sim.stored, sim.build_seconds);
      b.query_mops = mops(sim.stored, sim.query_seconds);
      b.fpr_measured = sim.error_rates.empty() ? 0.0 : sim.error_rates.front();
      // Keys still needing a second probe after training, plus bad payloads.
      b.errors = sim.lookup_errors +
                 static_cast<uint64_t>(std::llround((sim.mean_probes - 1.0) * static_cast<double>(sim.stored)));
      // Share of keys a T1-first lookup sends on to T2.
      b.stage2_touch = sim.baseline_probes - 1.0;
      b.train_rounds = sim.converged ? sim.rounds : sim.rounds + 1;
      b.seed = seed;
      out.push_back(b);
    }
  }
}

void lsm_suite(const BenchOptions& o, uint64_t seed, std::vector<BenchRecord>& out) {
  const uint64_t per_run = scaled(1e4, o.scale, 100);
  const uint64_t queries = scaled(1e5, o.scale, 1000);
  for (uint32_t runs : {10u, 20u, 30u}) {
    const auto sim = simulate_lsm(runs, per_run, queries, seed);
    BenchRecord b;
    b.scenario = "lsm/runs=" + std::to_string(runs);
    b.n = sim.keys;
    b.bits_per_item = static_cast<double>(sim.filter_bits) / static_cast<double>(sim.keys);
    b.space_mb = static_cast<double>(sim.filter_bits) / 1e6;
    b.construct_mops = mops(sim.keys, sim.build_seconds);
    b.query_mops = mops(queries, sim.query_seconds);
    b.fpr_measured = static_cast<double>(sim.extra_reads) / static_cast<double>(queries);
    b.errors = sim.oracle_mismatches + sim.false_negatives;
    b.max_extra_reads = sim.max_extra_reads;
    b.seed = seed;
    out.push_back(b);
  }
}

}  // namespace

bool is_bench_suite(std::string_view suite) noexcept {
  return suite == "dict" || suite == "huffman" || suite == "cuckoo" || suite == "lsm";
}

std::vector<BenchRecord> run_bench(std::string_view suite, const BenchOptions& options) {
  if (!is_bench_suite(suite)) fail(ErrorCode::kInvalidArgument, "unknown bench suite");
  if (!(options.scale > 0.0)) fail(ErrorCode::kInvalidArgument, "bench scale must be positive");
  std::vector<BenchRecord> out;
  for (uint64_t seed : options.seeds) {
    if (suite == "dict") dict_suite(options, seed, out);
    if (suite == "huffman") huffman_suite(options, seed, out);
    if (suite == "cuckoo") cuckoo_suite(options, seed, out);
    if (suite == "lsm") lsm_suite(options, seed, out);
  }
  return out;
}

void write_bench_header(std::ostream& out) {
  out << kBenchSchemaComment << '\n' << kBenchHeader << '\n';
}

void write_bench_row(std::ostream& out, const BenchRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%llu,%.6g,%.6g,%.6f,%.6f,%.6f,%.6f,%.8f,%llu,%.6f,%u,%u,0x%llX",
                r.scenario.c_str(), static_cast<unsigned long long>(r.n), r.lambda, r.epsilon,
                r.bits_per_item, r.space_mb, r.construct_mops, r.query_mops, r.fpr_measured,
                static_cast<unsigned long long>(r.errors), r.stage2_touch, r.max_extra_reads,
                r.train_rounds, static_cast<unsigned long long>(r.seed));
  out << buf << '\n';
}

}  // namespace cf
