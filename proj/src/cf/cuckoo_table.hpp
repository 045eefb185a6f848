// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cf/chained.hpp"

namespace cf {

// Two-table cuckoo hash table. New keys go to T1; a displaced key moves to
// its slot in the other table.
class CuckooHashTable {
 public:
  static constexpr unsigned kDefaultMaxKicks = 500;
  static constexpr unsigned kMaxRebuilds = 8;

  struct Slot {
    uint64_t key = 0;
    uint64_t payload = 0;
    bool used = false;
  };

  struct Found {
    int table;  // 0 for T1, 1 for T2
    uint64_t payload;
  };

  explicit CuckooHashTable(uint64_t m, HashSeed seed = kDefaultSeed,
                           unsigned max_kicks = kDefaultMaxKicks);

  // Returns the number of rebuilds this insert caused. Throws kRebuildLoop
  // after kMaxRebuilds consecutive failed rebuilds and kTableFull when both
  // tables are full.
  uint32_t insert(uint64_t key, uint64_t payload);
  std::optional<Found> lookup(uint64_t key) const noexcept;
  // Probe of one table only.
  std::optional<uint64_t> probe(int table, uint64_t key) const noexcept;

  uint64_t m() const noexcept { return m_; }
  uint64_t size() const noexcept { return count_[0] + count_[1]; }
  uint64_t count(int table) const noexcept { return count_[table]; }
  double load() const noexcept { return static_cast<double>(size()) / (2.0 * m_); }
  // #T1 / #T2.
  double negative_ratio() const noexcept;
  uint32_t rebuilds() const noexcept { return rebuilds_; }
  const std::vector<Slot>& table(int t) const noexcept { return tables_[t]; }

 private:
  uint64_t slot_of(int table, uint64_t key) const noexcept {
    return reduce64(mix64(key, seeds_[table]), m_);
  }
  // Places (key, payload) starting in T1; returns a left-over entry when the
  // kick chain runs out.
  std::optional<Slot> place(Slot entry) noexcept;
  void rebuild_with(Slot pending);

  uint64_t m_;
  HashSeed seeds_[2];
  unsigned max_kicks_;
  std::vector<Slot> tables_[2];
  uint64_t count_[2] = {0, 0};
  uint32_t rebuilds_ = 0;
};

struct PredictorConfig {
  double delta = 0.5;
  // Bloom layers; 0 picks ceil(log2 n) + 2, or floor(log2 log2 |U|) - 1 with
  // a terminal Othello layer.
  uint32_t bloom_layers = 0;
  bool terminal_othello = false;
  double slack = 1.1;
  HashSeed seed = kDefaultSeed;
};

// Cuckoo table plus a trainable "&~" predictor of which table holds a key
// (positive = T2).
class PredictedCuckoo {
 public:
  struct Lookup {
    std::optional<uint64_t> payload;
    uint32_t probes;
  };

  // Sizes the predictor from the analytic ratio at the table's load and
  // seeds its first layer with the keys currently in T2.
  PredictedCuckoo(CuckooHashTable table, const PredictorConfig& config = {});

  // Queries every stored key (T1 slots, then T2 slots) and trains on
  // mistakes. Returns the fraction mispredicted before correction.
  double train_round();
  // Rounds until a round sees no mistakes, capped at max_rounds. error_rates
  // receives each round's rate.
  uint32_t train_until_exact(uint32_t max_rounds, std::vector<double>* error_rates = nullptr);

  Lookup predicted_lookup(uint64_t key) const noexcept;
  // Always T1 first, then T2.
  Lookup baseline_lookup(uint64_t key) const noexcept;

  const CuckooHashTable& table() const noexcept { return table_; }
  const ChainedAndNotFilter& predictor() const noexcept { return predictor_; }
  uint64_t predictor_bits() const noexcept { return predictor_.size_bits(); }

 private:
  CuckooHashTable table_;
  ChainedAndNotFilter predictor_;
};

struct CuckooSimReport {
  uint64_t stored = 0;
  uint64_t in_t1 = 0;
  uint64_t in_t2 = 0;
  uint32_t rebuilds = 0;
  double lambda_measured = 0.0;
  double lambda_theory = 0.0;
  uint64_t predictor_bits = 0;
  uint32_t rounds = 0;
  bool converged = false;
  std::vector<double> error_rates;
  double mean_probes = 0.0;      // predicted lookups after training
  double baseline_probes = 0.0;  // T1-then-T2 lookups
  uint64_t lookup_errors = 0;    // missing or wrong payloads
  double build_seconds = 0.0;    // fill plus training
  double query_seconds = 0.0;
};

// Fills tables of m slots each to load r with distinct keys (payload = key)
// and trains a predictor for at most max_rounds rounds.
CuckooSimReport simulate_cuckoo(uint64_t m, double r, bool terminal_othello, uint32_t max_rounds,
                                uint64_t seed);

}  // namespace cf
