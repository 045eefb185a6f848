// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cf/chained.hpp"

namespace cf {

struct LsmConfig {
  DynamicConfig filter{};  // alpha 0 here means 8
  LsmConfig() { filter.default_alpha = 8; }
};

struct PointQueryResult {
  std::optional<uint32_t> found_in;  // run index, 0-based
  uint32_t runs_read = 0;
  // Runs read that did not contain the key.
  uint32_t extra_reads = 0;
  // Filter-positive runs past the stop point; counted only when verifying.
  uint32_t skipped_positives = 0;
};

// One LSM level of immutable sorted runs. Each run's dynamic "&" filter
// rejects keys of later runs that the run itself lacks, so a point query
// stops at the first run read.
class LsmLevel {
 public:
  struct Run {
    std::vector<uint64_t> keys;  // sorted, unique
    ChainedAndFilter filter;
    uint64_t exclusions = 0;

    bool contains(uint64_t key) const noexcept;
  };

  explicit LsmLevel(const LsmConfig& config = {}) : config_(config) {}

  // Throws kInvalidArgument unless keys are strictly increasing. Returns the
  // new run's index.
  uint32_t add_run(std::vector<uint64_t> keys);
  // Merges the given runs into one new run appended at the end, then drops
  // them. Existing exclusions are not recomputed.
  uint32_t compact(std::vector<uint32_t> runs);
  void drop_runs(std::vector<uint32_t> runs);

  // With verify set, every skipped filter-positive run is checked against
  // its keys; a missed key throws kVerificationFailed.
  PointQueryResult point_query(uint64_t key, bool verify = false) const;
  // First run containing key by scanning all runs.
  std::optional<uint32_t> oracle_find(uint64_t key) const noexcept;

  uint32_t run_count() const noexcept { return static_cast<uint32_t>(runs_.size()); }
  const Run& run(uint32_t i) const { return runs_.at(i); }
  uint64_t filter_bits() const noexcept;
  uint64_t key_count() const noexcept;

 private:
  LsmConfig config_;
  std::vector<Run> runs_;
  uint64_t next_seed_ = 0;
};

struct LsmSimReport {
  uint32_t runs = 0;
  uint64_t keys = 0;
  uint64_t filter_bits = 0;
  uint64_t queries = 0;
  uint32_t max_extra_reads = 0;
  uint64_t extra_reads = 0;
  uint64_t oracle_mismatches = 0;
  uint64_t false_negatives = 0;
  double build_seconds = 0.0;
  double query_seconds = 0.0;  // unverified point queries
};

// Builds `runs` runs of up to per_run keys sampled from a shared pool, then
// checks `queries` point queries (half stored keys, half random) in verify
// mode against oracle_find.
LsmSimReport simulate_lsm(uint32_t runs, uint64_t per_run, uint64_t queries, uint64_t seed);

}  // namespace cf
