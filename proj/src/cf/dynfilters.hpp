// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cf/bits.hpp"
#include "cf/hash.hpp"

namespace cf {

// Classic Bloom filter probed by double hashing.
class BloomFilter {
 public:
  BloomFilter() = default;
  BloomFilter(uint64_t bits, unsigned k, HashSeed seed);

  // Filter for n items at bits_per_item; k = round(bits_per_item * ln 2).
  static BloomFilter for_items(uint64_t n, double bits_per_item, HashSeed seed);

  void insert(uint64_t key) noexcept;
  // Same as insert; named for training code that drives bits to one.
  void force_bits(uint64_t key) noexcept { insert(key); }
  bool contains(uint64_t key) const noexcept;

  uint64_t size_bits() const noexcept { return bits_.size(); }
  unsigned k() const noexcept { return k_; }
  HashSeed seed() const noexcept { return seed_; }
  uint64_t inserted() const noexcept { return inserted_; }
  const BitArray& bits() const noexcept { return bits_; }

  // (1 - e^{-kn/m})^k for the current insert count.
  double expected_fpr() const noexcept;

  void write(ByteWriter& w) const;
  static BloomFilter read(ByteReader& r);

  friend bool operator==(const BloomFilter&, const BloomFilter&) = default;

 private:
  template <typename Fn>
  void for_each_position(uint64_t key, Fn&& fn) const noexcept;

  BitArray bits_;
  unsigned k_ = 1;
  HashSeed seed_;
  uint64_t inserted_ = 0;
};

// Partial-key cuckoo filter with 4-slot buckets. A single victim slot keeps
// the fingerprint left over from a failed kick chain, so a full table never
// loses a previously inserted key.
class CuckooFilter {
 public:
  static constexpr unsigned kSlots = 4;
  static constexpr unsigned kDefaultMaxKicks = 500;

  CuckooFilter() = default;
  // bucket_count is rounded up to a power of two.
  CuckooFilter(uint64_t bucket_count, unsigned fingerprint_bits, HashSeed seed,
               unsigned max_kicks = kDefaultMaxKicks);
  // Smallest filter holding n items at the given load.
  static CuckooFilter for_items(uint64_t n, unsigned fingerprint_bits, HashSeed seed,
                                double max_load = 0.95);

  // Throws kTableFull when the kick chain is exhausted.
  void insert(uint64_t key);
  bool contains(uint64_t key) const noexcept;
  // Throws kNotFound when no matching fingerprint exists.
  void erase(uint64_t key);

  uint64_t bucket_count() const noexcept { return buckets_; }
  unsigned fingerprint_bits() const noexcept { return f_; }
  uint64_t size() const noexcept { return count_; }
  double load() const noexcept { return static_cast<double>(count_) / (buckets_ * kSlots); }
  uint64_t size_bits() const noexcept { return buckets_ * kSlots * f_; }
  HashSeed seed() const noexcept { return seed_; }

  void write(ByteWriter& w) const;
  static CuckooFilter read(ByteReader& r);

 private:
  struct Probe {
    uint32_t fp;
    uint64_t i1;
    uint64_t i2;
  };
  Probe probe(uint64_t key) const noexcept;
  uint64_t alt_index(uint64_t i, uint32_t fp) const noexcept;
  bool bucket_has(uint64_t i, uint32_t fp) const noexcept;
  bool try_place(uint64_t i, uint32_t fp) noexcept;

  std::vector<uint32_t> slots_;  // 0 marks an empty slot
  uint64_t buckets_ = 0;
  unsigned f_ = 8;
  HashSeed seed_;
  unsigned max_kicks_ = kDefaultMaxKicks;
  uint64_t count_ = 0;
  bool has_victim_ = false;
  uint32_t victim_fp_ = 0;
  uint64_t victim_index_ = 0;
  std::mt19937_64 rng_;
};

// Othello hashing: a dynamic 1-bit classifier. Key e is an edge between
// node hA(e) of array A and node hB(e) of array B, and its bit is
// A[hA(e)] ^ B[hB(e)]. Inserts recolor the smaller component; an
// inconsistent cycle triggers a rebuild under fresh seeds.
class OthelloTable {
 public:
  static constexpr double kBitsPerKey = 2.33;

  enum class InsertResult { kOk, kRebuilt };

  OthelloTable() : OthelloTable(16, kDefaultOthelloSeed) {}
  explicit OthelloTable(uint64_t capacity, HashSeed seed = kDefaultOthelloSeed,
                        double bits_per_key = kBitsPerKey);

  // Throws kConflictingLabel when key is present with the other bit.
  InsertResult insert(uint64_t key, bool bit);
  bool query(uint64_t key) const noexcept {
    return a_.test(node_a(key)) != b_.test(node_b(key));
  }
  bool contains_key(uint64_t key) const noexcept { return labels_.count(key) != 0; }
  // Stored label, when present.
  const bool* label(uint64_t key) const noexcept;

  uint64_t size() const noexcept { return keys_.size(); }
  uint64_t capacity() const noexcept { return capacity_; }
  uint64_t size_bits() const noexcept { return a_.size() + b_.size(); }
  uint32_t rebuilds() const noexcept { return rebuilds_; }
  HashSeed seed_a() const noexcept { return seed_a_; }
  HashSeed seed_b() const noexcept { return seed_b_; }

  // Serializes the queryable form only; read() yields a table that answers
  // queries but rejects inserts.
  void write(ByteWriter& w) const;
  static OthelloTable read(ByteReader& r);
  bool frozen() const noexcept { return frozen_; }

 private:
  static constexpr HashSeed kDefaultOthelloSeed{0x07E110};

  uint64_t node_a(uint64_t key) const noexcept { return reduce64(mix64(key, seed_a_), a_.size()); }
  uint64_t node_b(uint64_t key) const noexcept { return reduce64(mix64(key, seed_b_), b_.size()); }

  void size_arrays();
  void reset_graph();
  bool add_edge(uint32_t index);
  void rebuild();
  uint32_t find(uint32_t x) noexcept;
  bool node_bit(uint32_t node) const noexcept;
  void flip_node(uint32_t node) noexcept;
  void flip_component(uint32_t start);

  BitArray a_;
  BitArray b_;
  HashSeed seed_a_;
  HashSeed seed_b_;
  uint64_t capacity_ = 0;
  double bits_per_key_ = kBitsPerKey;
  uint32_t rebuilds_ = 0;
  bool frozen_ = false;

  // Construction state.
  std::vector<std::pair<uint64_t, bool>> keys_;
  std::unordered_map<uint64_t, uint32_t> labels_;
  std::vector<uint32_t> parent_;
  std::vector<uint32_t> comp_size_;
  std::vector<std::vector<uint32_t>> adjacent_;  // node -> neighbor nodes
  std::vector<uint32_t> stack_;
  std::vector<uint32_t> visit_stamp_;
  uint32_t stamp_ = 0;
};

}  // namespace cf
