// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/lsm.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "cf/corpus.hpp"
#include "cf/error.hpp"

namespace cf {

bool LsmLevel::Run::contains(uint64_t key) const noexcept {
  return std::binary_search(keys.begin(), keys.end(), key);
}

uint32_t LsmLevel::add_run(std::vector<uint64_t> keys) {
  for (size_t i = 1; i < keys.size(); ++i) {
    if (keys[i - 1] >= keys[i]) fail(ErrorCode::kInvalidArgument, "run keys must be sorted and unique");
  }
  DynamicConfig dc = config_.filter;
  dc.seed = next_seed(config_.filter.seed, ++next_seed_);
  Run run;
  run.filter = ChainedAndFilter::build_dynamic(keys, {}, dc);
  run.keys = std::move(keys);
  for (Run& earlier : runs_) {
    for (uint64_t k : run.keys) {
      if (!earlier.contains(k) && earlier.filter.exclude_negative(k)) ++earlier.exclusions;
    }
  }
  runs_.push_back(std::move(run));
  return static_cast<uint32_t>(runs_.size() - 1);
}

void LsmLevel::drop_runs(std::vector<uint32_t> runs) {
  std::sort(runs.begin(), runs.end());
  runs.erase(std::unique(runs.begin(), runs.end()), runs.end());
  for (uint32_t i : runs) {
    if (i >= runs_.size()) fail(ErrorCode::kInvalidArgument, "run index out of range");
  }
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) runs_.erase(runs_.begin() + *it);
}

uint32_t LsmLevel::compact(std::vector<uint32_t> runs) {
  std::vector<uint64_t> merged;
  for (uint32_t i : runs) {
    if (i >= runs_.size()) fail(ErrorCode::kInvalidArgument, "run index out of range");
    merged.insert(merged.end(), runs_[i].keys.begin(), runs_[i].keys.end());
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  add_run(std::move(merged));
  drop_runs(std::move(runs));
  return static_cast<uint32_t>(runs_.size() - 1);
}

PointQueryResult LsmLevel::point_query(uint64_t key, bool verify) const {
  PointQueryResult r;
  bool stopped = false;
  for (uint32_t i = 0; i < runs_.size(); ++i) {
    if (!runs_[i].filter.query(key)) continue;
    if (stopped) {
      ++r.skipped_positives;
      if (verify && !r.found_in && runs_[i].contains(key)) {
        fail(ErrorCode::kVerificationFailed, "early stop skipped a run holding the key");
      }
      continue;
    }
    ++r.runs_read;
    stopped = true;
    if (runs_[i].contains(key)) {
      r.found_in = i;
    } else {
      ++r.extra_reads;
    }
    if (!verify) break;
  }
  return r;
}

std::optional<uint32_t> LsmLevel::oracle_find(uint64_t key) const noexcept {
  for (uint32_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].contains(key)) return i;
  }
  return std::nullopt;
}

uint64_t LsmLevel::filter_bits() const noexcept {
  uint64_t b = 0;
  for (const Run& r : runs_) b += r.filter.size_bits();
  return b;
}

uint64_t LsmLevel::key_count() const noexcept {
  uint64_t c = 0;
  for (const Run& r : runs_) c += r.keys.size();
  return c;
}

LsmSimReport simulate_lsm(uint32_t runs, uint64_t per_run, uint64_t queries, uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  if (runs == 0 || per_run == 0) fail(ErrorCode::kInvalidArgument, "need at least one run and key");
  std::mt19937_64 rng(seed);
  const auto pool = distinct_keys(runs * per_run + runs * per_run / 10, seed);
  LsmSimReport rep;
  rep.runs = runs;
  rep.queries = queries;

  auto t0 = Clock::now();
  LsmConfig cfg;
  cfg.filter.seed = HashSeed{seed};
  LsmLevel level(cfg);
  for (uint32_t i = 0; i < runs; ++i) {
    std::vector<uint64_t> keys(per_run);
    for (auto& k : keys) k = pool[rng() % pool.size()];
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    level.add_run(std::move(keys));
  }
  rep.build_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.keys = level.key_count();
  rep.filter_bits = level.filter_bits();

  std::vector<uint64_t> probe(queries);
  for (uint64_t q = 0; q < queries; ++q) probe[q] = (q & 1) ? pool[rng() % pool.size()] : rng();
  for (uint64_t k : probe) {
    const auto res = level.point_query(k, true);
    rep.oracle_mismatches += res.found_in != level.oracle_find(k);
    rep.extra_reads += res.extra_reads;
    rep.max_extra_reads = std::max(rep.max_extra_reads, res.extra_reads);
  }
  for (uint32_t i = 0; i < level.run_count(); ++i) {
    for (uint64_t k : level.run(i).keys) rep.false_negatives += !level.run(i).filter.query(k);
  }
  t0 = Clock::now();
  for (uint64_t k : probe) level.point_query(k);
  rep.query_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace cf
