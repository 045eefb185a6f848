// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/cuckoo_table.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "cf/bounds.hpp"
#include "cf/corpus.hpp"
#include "cf/error.hpp"

namespace cf {

CuckooHashTable::CuckooHashTable(uint64_t m, HashSeed seed, unsigned max_kicks)
    : m_(m), seeds_{seed, next_seed(seed)}, max_kicks_(max_kicks) {
  if (m == 0) fail(ErrorCode::kInvalidArgument, "cuckoo table needs at least one slot");
  tables_[0].assign(m, Slot{});
  tables_[1].assign(m, Slot{});
}

std::optional<CuckooHashTable::Slot> CuckooHashTable::place(Slot entry) noexcept {
  int t = 0;
  for (unsigned kick = 0; kick <= max_kicks_; ++kick) {
    Slot& s = tables_[t][slot_of(t, entry.key)];
    if (!s.used) {
      s = entry;
      ++count_[t];
      return std::nullopt;
    }
    std::swap(s, entry);
    t ^= 1;
  }
  return entry;
}

void CuckooHashTable::rebuild_with(Slot pending) {
  std::vector<Slot> all{pending};
  for (auto& tab : tables_) {
    for (const Slot& s : tab) {
      if (s.used) all.push_back(s);
    }
  }
  for (uint32_t attempt = 0; attempt < kMaxRebuilds; ++attempt) {
    ++rebuilds_;
    seeds_[0] = next_seed(seeds_[0], 2);
    seeds_[1] = next_seed(seeds_[1], 2);
    for (auto& tab : tables_) tab.assign(m_, Slot{});
    count_[0] = count_[1] = 0;
    bool ok = true;
    for (const Slot& s : all) {
      if (place(s)) {
        ok = false;
        break;
      }
    }
    if (ok) return;
  }
  fail(ErrorCode::kRebuildLoop, "cuckoo table rebuild did not converge");
}

uint32_t CuckooHashTable::insert(uint64_t key, uint64_t payload) {
  for (int t = 0; t < 2; ++t) {
    Slot& s = tables_[t][slot_of(t, key)];
    if (s.used && s.key == key) {
      s.payload = payload;
      return 0;
    }
  }
  if (size() >= 2 * m_) fail(ErrorCode::kTableFull, "cuckoo table is full");
  auto left = place(Slot{key, payload, true});
  if (!left) return 0;
  const uint32_t before = rebuilds_;
  rebuild_with(*left);
  return rebuilds_ - before;
}

std::optional<uint64_t> CuckooHashTable::probe(int table, uint64_t key) const noexcept {
  const Slot& s = tables_[table][slot_of(table, key)];
  if (s.used && s.key == key) return s.payload;
  return std::nullopt;
}

std::optional<CuckooHashTable::Found> CuckooHashTable::lookup(uint64_t key) const noexcept {
  for (int t = 0; t < 2; ++t) {
    if (auto p = probe(t, key)) return Found{t, *p};
  }
  return std::nullopt;
}

double CuckooHashTable::negative_ratio() const noexcept {
  return count_[1] == 0 ? 0.0 : static_cast<double>(count_[0]) / static_cast<double>(count_[1]);
}

// ---------------------------------------------------------------------------
// PredictedCuckoo

PredictedCuckoo::PredictedCuckoo(CuckooHashTable table, const PredictorConfig& config)
    : table_(std::move(table)) {
  const uint64_t stored = table_.size();
  const double r = std::min(table_.load(), 0.499);
  const double lambda = r > 0.0 ? bounds::cuckoo_negative_ratio(r) : 1.0;
  const auto n_est = static_cast<uint64_t>(std::ceil(static_cast<double>(stored) / (lambda + 1.0)));
  uint32_t layers = config.bloom_layers;
  if (layers == 0 && config.terminal_othello) {
    const double lg = std::log2(std::max(std::log2(static_cast<double>(std::max<uint64_t>(stored, 4))), 2.0));
    layers = std::max<uint32_t>(1, static_cast<uint32_t>(std::floor(lg)) - 1);
  }
  predictor_ = ChainedAndNotFilter::make_trainable(std::max<uint64_t>(n_est, 1), lambda, config.delta,
                                                   layers, config.terminal_othello, config.seed,
                                                   config.slack);
  for (const auto& s : table_.table(1)) {
    if (s.used) predictor_.seed_positive(s.key);
  }
}

double PredictedCuckoo::train_round() {
  uint64_t wrong = 0;
  for (int t = 0; t < 2; ++t) {
    for (const auto& s : table_.table(t)) {
      if (s.used && predictor_.train(s.key, t == 1)) ++wrong;
    }
  }
  return table_.size() == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(table_.size());
}

uint32_t PredictedCuckoo::train_until_exact(uint32_t max_rounds, std::vector<double>* error_rates) {
  for (uint32_t round = 1; round <= max_rounds; ++round) {
    const double e = train_round();
    if (error_rates) error_rates->push_back(e);
    if (e == 0.0) return round;
  }
  return max_rounds + 1;
}

PredictedCuckoo::Lookup PredictedCuckoo::predicted_lookup(uint64_t key) const noexcept {
  const int first = predictor_.query(key) ? 1 : 0;
  if (auto p = table_.probe(first, key)) return {p, 1};
  return {table_.probe(first ^ 1, key), 2};
}

PredictedCuckoo::Lookup PredictedCuckoo::baseline_lookup(uint64_t key) const noexcept {
  if (auto p = table_.probe(0, key)) return {p, 1};
  return {table_.probe(1, key), 2};
}

CuckooSimReport simulate_cuckoo(uint64_t m, double r, bool terminal_othello, uint32_t max_rounds,
                                uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  if (!(r > 0.0 && r < 0.5)) fail(ErrorCode::kDomain, "load factor must be in (0, 0.5)");
  const auto count = static_cast<uint64_t>(std::llround(2.0 * static_cast<double>(m) * r));
  const auto keys = distinct_keys(count, seed);
  CuckooSimReport rep;
  rep.stored = count;
  rep.lambda_theory = bounds::cuckoo_negative_ratio(r);

  auto t0 = Clock::now();
  CuckooHashTable table(m, HashSeed{seed});
  for (uint64_t k : keys) table.insert(k, k);
  rep.in_t1 = table.count(0);
  rep.in_t2 = table.count(1);
  rep.rebuilds = table.rebuilds();
  rep.lambda_measured = table.negative_ratio();
  PredictorConfig pc;
  pc.terminal_othello = terminal_othello;
  pc.seed = HashSeed{seed};
  PredictedCuckoo p(std::move(table), pc);
  uint64_t baseline = 0;
  for (uint64_t k : keys) baseline += p.baseline_lookup(k).probes;
  rep.rounds = std::min(p.train_until_exact(max_rounds, &rep.error_rates), max_rounds);
  rep.converged = !rep.error_rates.empty() && rep.error_rates.back() == 0.0;
  rep.build_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.predictor_bits = p.predictor_bits();

  uint64_t probes = 0;
  t0 = Clock::now();
  for (uint64_t k : keys) {
    const auto l = p.predicted_lookup(k);
    probes += l.probes;
    rep.lookup_errors += !l.payload || *l.payload != k;
  }
  rep.query_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (count) {
    rep.mean_probes = static_cast<double>(probes) / static_cast<double>(count);
    rep.baseline_probes = static_cast<double>(baseline) / static_cast<double>(count);
  }
  return rep;
}

}  // namespace cf
