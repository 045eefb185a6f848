// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cf/bits.hpp"
#include "cf/hash.hpp"

namespace cf {

inline constexpr HashSeed kDefaultSeed{0xC0FFEE};

struct RetrievalConfig {
  // Table expansion C = c_num / c_den cells per encoded key.
  uint32_t c_num = 113;
  uint32_t c_den = 100;
  uint32_t j = 3;
  uint32_t z = 120;
  uint32_t max_retries = 16;
  HashSeed seed = kDefaultSeed;

  double expansion() const noexcept { return static_cast<double>(c_num) / c_den; }
};

// Result of hypergraph peeling. Entries are in peel order; values are
// assigned in reverse (the insertion order), so entry i's place cell is
// never touched by entries inserted before it.
struct PeelOrder {
  std::vector<uint32_t> key;
  std::vector<uint64_t> place;
};

// Peels the hypergraph whose edge e is edge_cells(e). Returns nullopt when a
// non-empty 2-core remains.
template <typename EdgeFn>
std::optional<PeelOrder> peel(uint32_t edge_count, uint64_t cell_count, EdgeFn&& edge_cells);

std::optional<PeelOrder> peel_edges(std::span<const SlotSet> edges, uint64_t cell_count);

// Checks the insertion-order invariant of a peel result.
bool peel_order_sound(std::span<const SlotSet> edges, const PeelOrder& order);

// Bit-packed XOR retrieval table: retrieve(k) is the XOR of k's j cells.
class RetrievalTable {
 public:
  RetrievalTable() = default;

  // Encodes value_of(i, digest) for each keys[i]. value_of may depend on the
  // digest because fingerprints change with every retry seed. Throws
  // kDuplicateKey or kPeelingFailed.
  template <typename ValueFn>
  static RetrievalTable build(std::span<const uint64_t> keys, unsigned alpha,
                              const RetrievalConfig& config, uint64_t extra_capacity,
                              ValueFn&& value_of);

  static RetrievalTable build_pairs(std::span<const uint64_t> keys,
                                    std::span<const uint64_t> values, unsigned alpha,
                                    const RetrievalConfig& config = {});

  uint64_t digest(uint64_t key) const noexcept { return mix64(key, seed_); }

  uint64_t retrieve_digest(uint64_t digest) const noexcept {
    uint64_t v = 0;
    for (uint64_t c : derive_slots(digest, layout_)) v ^= cells_.get(c);
    return v;
  }
  uint64_t retrieve(uint64_t key) const noexcept { return retrieve_digest(digest(key)); }

  const SlotLayout& layout() const noexcept { return layout_; }
  unsigned alpha() const noexcept { return cells_.width(); }
  HashSeed seed() const noexcept { return seed_; }
  uint64_t encoded_count() const noexcept { return encoded_count_; }
  uint64_t cell_count() const noexcept { return cells_.size(); }
  uint64_t payload_bits() const noexcept { return cells_.bit_size(); }
  uint32_t attempts() const noexcept { return attempts_; }
  const RetrievalConfig& config() const noexcept { return config_; }
  const PackedCells& cells() const noexcept { return cells_; }

  void write(ByteWriter& w, uint8_t variant) const;
  static RetrievalTable read(ByteReader& r, uint8_t& variant);

  friend bool operator==(const RetrievalTable& a, const RetrievalTable& b) {
    return a.layout_ == b.layout_ && a.seed_ == b.seed_ && a.cells_ == b.cells_ &&
           a.encoded_count_ == b.encoded_count_;
  }

 private:
  SlotLayout layout_;
  HashSeed seed_;
  RetrievalConfig config_;
  PackedCells cells_;
  uint64_t encoded_count_ = 0;
  uint32_t attempts_ = 0;
};

// Serialized variant tags of CFB1 blobs.
enum class BloomierVariant : uint8_t { kRetrieval = 0, kApprox = 1, kExactA = 2, kExactB = 3 };

// Static approximate membership: stores an alpha-bit fingerprint per
// positive; false positive rate 2^-alpha.
class ApproxBloomier {
 public:
  ApproxBloomier() = default;
  static ApproxBloomier build(std::span<const uint64_t> positives, unsigned alpha,
                              const RetrievalConfig& config = {});

  bool contains(uint64_t key) const noexcept {
    const uint64_t d = table_.digest(key);
    return table_.retrieve_digest(d) == derive_fingerprint(d, table_.alpha());
  }

  unsigned alpha() const noexcept { return table_.alpha(); }
  uint64_t size_bits() const noexcept { return table_.payload_bits(); }
  const RetrievalTable& table() const noexcept { return table_; }

  void write(ByteWriter& w) const { table_.write(w, static_cast<uint8_t>(BloomierVariant::kApprox)); }
  static ApproxBloomier read(ByteReader& r);

 private:
  RetrievalTable table_;
};

enum class FingerprintStrategy : uint8_t {
  kCoinFlip = 0,  // strategy A: store h1(e) for positives, ~h1(e) for negatives
  kConstant = 1,  // strategy B: store 1 for positives, 0 for negatives
};

struct LabeledKey {
  uint64_t key;
  bool positive;
};

// Static exact 1-bit classifier. Keys outside the encoded set pass with
// probability 1/2 under kCoinFlip.
class ExactBloomier {
 public:
  ExactBloomier() = default;
  static ExactBloomier build(std::span<const LabeledKey> labeled, FingerprintStrategy strategy,
                             const RetrievalConfig& config = {}, uint64_t extra_capacity = 0);
  // Same, with positives and negatives in separate spans.
  static ExactBloomier build(std::span<const uint64_t> positives, std::span<const uint64_t> negatives,
                             FingerprintStrategy strategy, const RetrievalConfig& config = {},
                             uint64_t extra_capacity = 0);

  bool contains(uint64_t key) const noexcept {
    const uint64_t d = table_.digest(key);
    const uint64_t v = table_.retrieve_digest(d);
    return strategy_ == FingerprintStrategy::kConstant ? v == 1 : v == derive_fingerprint(d, 1);
  }

  FingerprintStrategy strategy() const noexcept { return strategy_; }
  uint64_t size_bits() const noexcept { return table_.payload_bits(); }
  const RetrievalTable& table() const noexcept { return table_; }

  void write(ByteWriter& w) const;
  static ExactBloomier read(ByteReader& r);

 private:
  RetrievalTable table_;
  FingerprintStrategy strategy_ = FingerprintStrategy::kCoinFlip;
};

// Size of a serialized CFB1 header, counted by callers that report total space.
uint64_t bloomier_header_bits() noexcept;

}  // namespace cf

#include "cf/bloomier_impl.hpp"
