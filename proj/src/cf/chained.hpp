// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cf/bloomier.hpp"
#include "cf/bounds.hpp"
#include "cf/dynfilters.hpp"

namespace cf {

// Returns U \ S. Throws kInvalidArgument unless every positive occurs in
// the universe exactly once, kDuplicateKey on repeated positives.
std::vector<uint64_t> split_universe(std::span<const uint64_t> universe,
                                     std::span<const uint64_t> positives);

// Optional query instrumentation.
struct QueryStats {
  uint64_t queries = 0;
  uint64_t stage1_passes = 0;
  uint64_t stage2_lookups = 0;
  uint64_t layer_probes = 0;
};

enum class AndStrategy : uint8_t { kAuto = 0, kA = 1, kB = 2 };

struct AndConfig {
  RetrievalConfig retrieval;
  AndStrategy strategy = AndStrategy::kAuto;
  // Strategy B is used only when requested explicitly or enabled here.
  bool enable_strategy_b = false;
  uint32_t survivor_retries = 4;
};

enum class Stage1Kind : uint8_t { kNone = 0, kApproxBloomier = 1, kBloom = 2, kCuckoo = 3 };
enum class Stage2Kind : uint8_t { kNone = 0, kExactBloomier = 1, kOthello = 2 };

struct DynamicConfig {
  Stage1Kind stage1 = Stage1Kind::kBloom;
  // Stage-1 strength in bits of false-positive reduction. Zero derives
  // floor(log2 lambda) from the inputs, or default_alpha when there are no
  // negatives yet.
  unsigned alpha = 0;
  unsigned default_alpha = 8;
  // Othello capacity reserved beyond the initial keys, as a fraction of n.
  double othello_reserve = 0.25;
  HashSeed seed = kDefaultSeed;
};

// Counts gathered while building a two-stage filter.
struct AndBuildReport {
  uint64_t positives = 0;
  uint64_t negatives = 0;
  uint64_t survivors = 0;           // negatives passing stage 1 (S')
  uint64_t encoded_negatives = 0;   // survivors stored in stage 2
  uint32_t stage1_attempts = 0;
  bool degenerate = false;
};

// F(e) = F1(e) & F2(e), where F1 is approximate and F2 clears the false
// positives of F1.
class ChainedAndFilter {
 public:
  ChainedAndFilter() = default;

  // Exact filter over U = positives + negatives. Falls back to one exact
  // Bloomier filter when lambda <= 1/ln 2 or either side is empty.
  static ChainedAndFilter build_exact(std::span<const uint64_t> positives,
                                      std::span<const uint64_t> negatives,
                                      const AndConfig& config = {},
                                      AndBuildReport* report = nullptr);

  // Filter with false positive rate epsilon over the negatives.
  static ChainedAndFilter build_general(std::span<const uint64_t> positives,
                                        std::span<const uint64_t> negatives, double epsilon,
                                        const AndConfig& config = {},
                                        AndBuildReport* report = nullptr);

  // Exact filter whose stages accept updates: a Bloom or cuckoo stage 1 and
  // an Othello stage 2.
  static ChainedAndFilter build_dynamic(std::span<const uint64_t> positives,
                                        std::span<const uint64_t> negatives,
                                        const DynamicConfig& config = {},
                                        AndBuildReport* report = nullptr);

  bool query(uint64_t key) const noexcept;
  bool query(uint64_t key, QueryStats& stats) const noexcept;
  bool stage1(uint64_t key) const noexcept;
  bool stage2(uint64_t key) const noexcept;

  // Makes a negative query false. Returns true when stage 2 had to record
  // it. Throws kConflictingLabel for a registered positive and
  // kInvalidArgument unless stage 2 is dynamic.
  bool exclude_negative(uint64_t key);
  // Adds a positive. Both stages must be dynamic.
  void insert_positive(uint64_t key);

  Stage1Kind stage1_kind() const noexcept { return static_cast<Stage1Kind>(stage1_.index()); }
  Stage2Kind stage2_kind() const noexcept { return static_cast<Stage2Kind>(stage2_.index()); }
  bounds::Strategy strategy() const noexcept { return strategy_; }
  unsigned alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double lambda() const noexcept { return lambda_; }
  double epsilon() const noexcept { return epsilon_; }
  uint64_t positives() const noexcept { return positives_; }

  uint64_t stage1_bits() const noexcept;
  uint64_t stage2_bits() const noexcept;
  // Queryable payload bits of both stages, excluding headers.
  uint64_t size_bits() const noexcept { return stage1_bits() + stage2_bits(); }
  double bits_per_positive() const noexcept;

  const OthelloTable* othello() const noexcept { return std::get_if<OthelloTable>(&stage2_); }

  void write(ByteWriter& w) const;
  static ChainedAndFilter read_body(ByteReader& r, uint32_t layer_count);

 private:
  using Stage1 = std::variant<std::monostate, ApproxBloomier, BloomFilter, CuckooFilter>;
  using Stage2 = std::variant<std::monostate, ExactBloomier, OthelloTable>;

  static ChainedAndFilter single_exact(std::span<const uint64_t> positives,
                                       std::span<const uint64_t> negatives,
                                       const AndConfig& config, AndBuildReport* report);

  Stage1 stage1_;
  Stage2 stage2_;
  bounds::Strategy strategy_ = bounds::Strategy::kA;
  unsigned alpha_ = 0;
  double beta_ = 0.0;
  double lambda_ = 0.0;
  double epsilon_ = 0.0;
  uint64_t positives_ = 0;
};

struct AndNotConfig {
  double delta = 0.5;
  bool use_terminal_exact = false;
  // Terminal switchover at |A_{i+1}| <= terminal_fraction * n / log2 n.
  double terminal_fraction = 1.0;
  RetrievalConfig retrieval;
  HashSeed seed = kDefaultSeed;
};

struct AndNotBuildReport {
  std::vector<uint64_t> layer_keys;  // |A_i| encoded by layer i
  std::vector<uint64_t> layer_bits;
  uint64_t terminal_keys = 0;
};

// Layered filter F1 & ~(F2 & ~(F3 & ...)). A key's answer is the parity of
// the number of leading layers that accept it.
class ChainedAndNotFilter {
 public:
  ChainedAndNotFilter() = default;

  static ChainedAndNotFilter build_exact(std::span<const uint64_t> positives,
                                         std::span<const uint64_t> negatives,
                                         const AndNotConfig& config = {},
                                         AndNotBuildReport* report = nullptr);

  // Empty trainable filter for about n positives against lambda*n negatives.
  // bloom_layers == 0 picks ceil(log2 n) + 2. With terminal_othello, keys
  // accepted by every Bloom layer go to an Othello table.
  static ChainedAndNotFilter make_trainable(uint64_t n, double lambda, double delta,
                                            uint32_t bloom_layers, bool terminal_othello,
                                            HashSeed seed = kDefaultSeed, double slack = 1.1);

  bool query(uint64_t key) const noexcept { return (depth(key) & 1) != 0; }
  bool query(uint64_t key, QueryStats& stats) const noexcept;
  // Number of leading layers accepting key, counting the terminal layer.
  uint32_t depth(uint64_t key) const noexcept;

  // Adds key to the first layer (seeding the trainable form with S).
  void seed_positive(uint64_t key) { layers_.front().insert(key); }
  // Forces bits until query(key) == label. Returns whether key was wrong.
  // Throws kCapacityExceeded when the layers run out without a terminal.
  bool train(uint64_t key, bool label);

  uint32_t layer_count() const noexcept { return static_cast<uint32_t>(layers_.size()); }
  // Layers including the terminal one; layer_accepts(layer_count(), key)
  // is the terminal's answer.
  uint32_t total_layers() const noexcept { return layer_count() + (has_terminal() ? 1 : 0); }
  bool layer_accepts(uint32_t i, uint64_t key) const noexcept;
  const std::vector<BloomFilter>& layers() const noexcept { return layers_; }
  bool has_terminal() const noexcept { return terminal_.index() != 0; }
  const OthelloTable* terminal_othello() const noexcept { return std::get_if<OthelloTable>(&terminal_); }
  double delta() const noexcept { return delta_; }
  double lambda() const noexcept { return lambda_; }
  uint64_t positives() const noexcept { return positives_; }

  uint64_t size_bits() const noexcept;
  double bits_per_positive() const noexcept;

  void write(ByteWriter& w) const;
  static ChainedAndNotFilter read_body(ByteReader& r, uint32_t layer_count);

 private:
  using Terminal = std::variant<std::monostate, ExactBloomier, OthelloTable>;

  std::vector<BloomFilter> layers_;
  Terminal terminal_;
  double delta_ = 0.5;
  double lambda_ = 0.0;
  uint64_t positives_ = 0;
};

// Recursive evaluation of F1 & ~(F2 & ~(...)), kept separate from the
// parity rule so the two can be cross-checked.
bool evaluate_andnot_recursive(const ChainedAndNotFilter& f, uint64_t key);

enum class Combinator : uint8_t { kAnd = 0, kAndNot = 1 };

// Either combinator behind one container format ("CFC1").
using ChainedFilter = std::variant<ChainedAndFilter, ChainedAndNotFilter>;

std::vector<uint8_t> serialize(const ChainedFilter& f);
ChainedFilter deserialize(std::span<const uint8_t> bytes);
ChainedFilter read_container(ByteReader& r);
void write_container(ByteWriter& w, const ChainedFilter& f);

bool query(const ChainedFilter& f, uint64_t key) noexcept;

}  // namespace cf
