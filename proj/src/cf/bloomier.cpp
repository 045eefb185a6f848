// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/bloomier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace cf {

namespace {

constexpr std::string_view kMagic = "CFB1";
constexpr uint16_t kVersion = 1;

}  // namespace

namespace detail {

uint64_t expanded_cells(uint64_t keys, const RetrievalConfig& config) {
  const unsigned __int128 scaled = static_cast<unsigned __int128>(keys) * config.c_num;
  const uint64_t configured = static_cast<uint64_t>((scaled + config.c_den - 1) / config.c_den);
  const double floor = std::ceil(finite_size_expansion(keys, config.j) * static_cast<double>(keys));
  return std::max(configured, static_cast<uint64_t>(floor));
}

bool has_duplicates(std::span<const uint64_t> keys) {
  std::vector<uint64_t> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace detail

std::optional<PeelOrder> peel_edges(std::span<const SlotSet> edges, uint64_t cell_count) {
  for (const SlotSet& s : edges) {
    for (uint64_t c : s) {
      if (c >= cell_count) fail(ErrorCode::kInvalidArgument, "edge cell out of range");
    }
  }
  return peel(static_cast<uint32_t>(edges.size()), cell_count,
              [&](uint32_t e) -> const SlotSet& { return edges[e]; });
}

bool peel_order_sound(std::span<const SlotSet> edges, const PeelOrder& order) {
  if (order.key.size() != edges.size() || order.place.size() != edges.size()) return false;
  std::unordered_set<uint64_t> touched;
  std::unordered_set<uint32_t> seen;
  for (size_t k = order.key.size(); k-- > 0;) {
    const uint32_t e = order.key[k];
    if (!seen.insert(e).second) return false;
    const SlotSet& s = edges[e];
    if (std::find(s.begin(), s.end(), order.place[k]) == s.end()) return false;
    if (touched.count(order.place[k]) != 0) return false;
    for (uint64_t c : s) touched.insert(c);
  }
  return true;
}

RetrievalTable RetrievalTable::build_pairs(std::span<const uint64_t> keys,
                                           std::span<const uint64_t> values, unsigned alpha,
                                           const RetrievalConfig& config) {
  if (keys.size() != values.size()) fail(ErrorCode::kInvalidArgument, "keys and values differ in length");
  return build(keys, alpha, config, 0, [&](uint32_t i, uint64_t) { return values[i]; });
}

void RetrievalTable::write(ByteWriter& w, uint8_t variant) const {
  w.magic(kMagic);
  w.u16(kVersion);
  w.u8(variant);
  w.u8(0);
  w.u64(seed_.value);
  w.u32(config_.c_num);
  w.u32(config_.c_den);
  w.u32(layout_.j);
  w.u32(layout_.window);
  w.u32(cells_.width());
  w.u32(layout_.segment_count);
  w.u64(layout_.segment_len);
  w.u64(cells_.size());
  w.u64(encoded_count_);
  w.str(kMixerId);
  w.words(cells_.words());
}

RetrievalTable RetrievalTable::read(ByteReader& r, uint8_t& variant) {
  r.expect_magic(kMagic);
  if (r.u16() != kVersion) fail(ErrorCode::kFormat, "unsupported CFB1 version");
  variant = r.u8();
  r.u8();
  RetrievalTable t;
  t.seed_ = HashSeed{r.u64()};
  t.config_.seed = t.seed_;
  t.config_.c_num = r.u32();
  t.config_.c_den = r.u32();
  t.layout_.j = r.u32();
  t.layout_.window = r.u32();
  t.config_.j = t.layout_.j;
  t.config_.z = t.layout_.window;
  const uint32_t alpha = r.u32();
  t.layout_.segment_count = r.u32();
  t.layout_.segment_len = r.u64();
  const uint64_t m = r.u64();
  t.encoded_count_ = r.u64();
  if (r.str() != kMixerId) fail(ErrorCode::kFormat, "CFB1 blob uses a different mixer");
  if (!t.layout_.valid() || t.layout_.total_cells() != m || alpha > 64) {
    fail(ErrorCode::kFormat, "inconsistent CFB1 layout");
  }
  r.expect_bytes((m * alpha + 63) / 64 * 8);
  t.cells_ = PackedCells(m, alpha);
  r.words(t.cells_.mutable_words());
  t.attempts_ = 0;
  return t;
}

uint64_t bloomier_header_bits() noexcept {
  // magic, version, variant, pad, seed, C, j, z, alpha, segments, seg_len, m,
  // count, mixer id.
  return 8 * (4 + 2 + 1 + 1 + 8 + 4 + 4 + 4 + 4 + 4 + 4 + 8 + 8 + 8 + 2 + kMixerId.size());
}

ApproxBloomier ApproxBloomier::build(std::span<const uint64_t> positives, unsigned alpha,
                                     const RetrievalConfig& config) {
  if (alpha == 0 || alpha > 64) fail(ErrorCode::kInvalidArgument, "alpha must be in [1, 64]");
  ApproxBloomier f;
  f.table_ = RetrievalTable::build(positives, alpha, config, 0,
                                   [alpha](uint32_t, uint64_t d) { return derive_fingerprint(d, alpha); });
  return f;
}

ApproxBloomier ApproxBloomier::read(ByteReader& r) {
  uint8_t variant = 0;
  ApproxBloomier f;
  f.table_ = RetrievalTable::read(r, variant);
  if (variant != static_cast<uint8_t>(BloomierVariant::kApprox)) {
    fail(ErrorCode::kFormat, "CFB1 blob is not an approximate filter");
  }
  return f;
}

ExactBloomier ExactBloomier::build(std::span<const LabeledKey> labeled, FingerprintStrategy strategy,
                                   const RetrievalConfig& config, uint64_t extra_capacity) {
  std::vector<uint64_t> keys(labeled.size());
  for (size_t i = 0; i < labeled.size(); ++i) keys[i] = labeled[i].key;
  ExactBloomier f;
  f.strategy_ = strategy;
  f.table_ = RetrievalTable::build(keys, 1, config, extra_capacity, [&](uint32_t i, uint64_t d) -> uint64_t {
    const bool pos = labeled[i].positive;
    if (strategy == FingerprintStrategy::kConstant) return pos ? 1 : 0;
    const uint64_t h = derive_fingerprint(d, 1);
    return pos ? h : h ^ 1;
  });
  return f;
}

ExactBloomier ExactBloomier::build(std::span<const uint64_t> positives,
                                   std::span<const uint64_t> negatives, FingerprintStrategy strategy,
                                   const RetrievalConfig& config, uint64_t extra_capacity) {
  std::vector<uint64_t> keys;
  keys.reserve(positives.size() + negatives.size());
  keys.insert(keys.end(), positives.begin(), positives.end());
  keys.insert(keys.end(), negatives.begin(), negatives.end());
  const size_t split = positives.size();
  ExactBloomier f;
  f.strategy_ = strategy;
  f.table_ = RetrievalTable::build(keys, 1, config, extra_capacity, [&](uint32_t i, uint64_t d) -> uint64_t {
    const bool pos = i < split;
    if (strategy == FingerprintStrategy::kConstant) return pos ? 1 : 0;
    const uint64_t h = derive_fingerprint(d, 1);
    return pos ? h : h ^ 1;
  });
  return f;
}

void ExactBloomier::write(ByteWriter& w) const {
  const auto v = strategy_ == FingerprintStrategy::kConstant ? BloomierVariant::kExactB
                                                              : BloomierVariant::kExactA;
  table_.write(w, static_cast<uint8_t>(v));
}

ExactBloomier ExactBloomier::read(ByteReader& r) {
  uint8_t variant = 0;
  ExactBloomier f;
  f.table_ = RetrievalTable::read(r, variant);
  if (variant == static_cast<uint8_t>(BloomierVariant::kExactA)) {
    f.strategy_ = FingerprintStrategy::kCoinFlip;
  } else if (variant == static_cast<uint8_t>(BloomierVariant::kExactB)) {
    f.strategy_ = FingerprintStrategy::kConstant;
  } else {
    fail(ErrorCode::kFormat, "CFB1 blob is not an exact filter");
  }
  if (f.table_.alpha() != 1) fail(ErrorCode::kFormat, "exact filter must use 1-bit cells");
  return f;
}

}  // namespace cf
