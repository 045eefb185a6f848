// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/dynfilters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string_view>

#include "cf/error.hpp"

namespace cf {

namespace {

constexpr std::string_view kBloomMagic = "BLM1";
constexpr std::string_view kCuckooMagic = "CKF1";
constexpr std::string_view kOthelloMagic = "OTH1";
constexpr uint64_t kProbeStream = 0xD6E8FEB86659FD93ULL;
constexpr uint64_t kAltStream = 0xCA5A826395121157ULL;
constexpr uint32_t kRebuildsBeforeGrowth = 8;

}  // namespace

// ---------------------------------------------------------------------------
// BloomFilter

BloomFilter::BloomFilter(uint64_t bits, unsigned k, HashSeed seed)
    : bits_(std::max<uint64_t>(bits, 1)), k_(std::max(k, 1u)), seed_(seed) {
  if (k > 64) fail(ErrorCode::kInvalidArgument, "bloom k exceeds 64");
}

BloomFilter BloomFilter::for_items(uint64_t n, double bits_per_item, HashSeed seed) {
  if (!(bits_per_item > 0)) fail(ErrorCode::kInvalidArgument, "bits per item must be positive");
  const auto bits = static_cast<uint64_t>(std::ceil(bits_per_item * static_cast<double>(std::max<uint64_t>(n, 1))));
  const auto k = static_cast<unsigned>(std::lround(bits_per_item * std::numbers::ln2));
  return BloomFilter(bits, std::clamp(k, 1u, 64u), seed);
}

template <typename Fn>
void BloomFilter::for_each_position(uint64_t key, Fn&& fn) const noexcept {
  const uint64_t h = mix64(key, seed_);
  const uint64_t step = fmix64(h ^ kProbeStream) | 1;
  uint64_t x = h;
  for (unsigned i = 0; i < k_; ++i, x += step) {
    if (!fn(reduce64(x, bits_.size()))) return;
  }
}

void BloomFilter::insert(uint64_t key) noexcept {
  for_each_position(key, [&](uint64_t p) {
    bits_.set(p);
    return true;
  });
  ++inserted_;
}

bool BloomFilter::contains(uint64_t key) const noexcept {
  bool all = true;
  for_each_position(key, [&](uint64_t p) { return all = bits_.test(p); });
  return all;
}

double BloomFilter::expected_fpr() const noexcept {
  const double fill = -std::expm1(-static_cast<double>(k_) * static_cast<double>(inserted_) /
                                  static_cast<double>(bits_.size()));
  return std::pow(fill, k_);
}

void BloomFilter::write(ByteWriter& w) const {
  w.magic(kBloomMagic);
  w.u64(seed_.value);
  w.u32(k_);
  w.u64(bits_.size());
  w.u64(inserted_);
  w.words(bits_.words());
}

BloomFilter BloomFilter::read(ByteReader& r) {
  r.expect_magic(kBloomMagic);
  const HashSeed seed{r.u64()};
  const uint32_t k = r.u32();
  const uint64_t bits = r.u64();
  if (k == 0 || k > 64 || bits == 0) fail(ErrorCode::kFormat, "inconsistent BLM1 header");
  r.expect_bytes(8 + (bits + 63) / 64 * 8);
  BloomFilter f(bits, k, seed);
  f.inserted_ = r.u64();
  r.words(f.bits_.mutable_words());
  return f;
}

// ---------------------------------------------------------------------------
// CuckooFilter

CuckooFilter::CuckooFilter(uint64_t bucket_count, unsigned fingerprint_bits, HashSeed seed,
                           unsigned max_kicks)
    : buckets_(std::bit_ceil(std::max<uint64_t>(bucket_count, 1))),
      f_(fingerprint_bits),
      seed_(seed),
      max_kicks_(max_kicks),
      rng_(seed.value) {
  if (f_ < 1 || f_ > 32) fail(ErrorCode::kInvalidArgument, "fingerprint bits must be in [1, 32]");
  slots_.assign(buckets_ * kSlots, 0);
}

CuckooFilter CuckooFilter::for_items(uint64_t n, unsigned fingerprint_bits, HashSeed seed,
                                     double max_load) {
  if (!(max_load > 0 && max_load <= 1)) fail(ErrorCode::kInvalidArgument, "load must be in (0, 1]");
  const double slots = std::ceil(static_cast<double>(std::max<uint64_t>(n, 1)) / max_load);
  return CuckooFilter(static_cast<uint64_t>(std::ceil(slots / kSlots)), fingerprint_bits, seed);
}

CuckooFilter::Probe CuckooFilter::probe(uint64_t key) const noexcept {
  const uint64_t h = mix64(key, seed_);
  const uint64_t mask = (f_ == 32) ? 0xFFFFFFFFULL : ((1ULL << f_) - 1);
  uint32_t fp = static_cast<uint32_t>((h >> 32) & mask);
  if (fp == 0) fp = 1;
  const uint64_t i1 = h & (buckets_ - 1);
  return {fp, i1, alt_index(i1, fp)};
}

uint64_t CuckooFilter::alt_index(uint64_t i, uint32_t fp) const noexcept {
  return (i ^ fmix64(fp ^ kAltStream)) & (buckets_ - 1);
}

bool CuckooFilter::bucket_has(uint64_t i, uint32_t fp) const noexcept {
  const uint32_t* b = &slots_[i * kSlots];
  return b[0] == fp || b[1] == fp || b[2] == fp || b[3] == fp;
}

bool CuckooFilter::try_place(uint64_t i, uint32_t fp) noexcept {
  uint32_t* b = &slots_[i * kSlots];
  for (unsigned s = 0; s < kSlots; ++s) {
    if (b[s] == 0) {
      b[s] = fp;
      return true;
    }
  }
  return false;
}

void CuckooFilter::insert(uint64_t key) {
  if (has_victim_) fail(ErrorCode::kTableFull, "cuckoo filter is full");
  const Probe p = probe(key);
  ++count_;
  if (try_place(p.i1, p.fp) || try_place(p.i2, p.fp)) return;
  uint64_t i = (rng_() & 1) ? p.i1 : p.i2;
  uint32_t fp = p.fp;
  for (unsigned kick = 0; kick < max_kicks_; ++kick) {
    std::swap(fp, slots_[i * kSlots + rng_() % kSlots]);
    i = alt_index(i, fp);
    if (try_place(i, fp)) return;
  }
  has_victim_ = true;
  victim_fp_ = fp;
  victim_index_ = i;
  fail(ErrorCode::kTableFull, "cuckoo filter kick chain exhausted");
}

bool CuckooFilter::contains(uint64_t key) const noexcept {
  const Probe p = probe(key);
  if (bucket_has(p.i1, p.fp) || bucket_has(p.i2, p.fp)) return true;
  return has_victim_ && victim_fp_ == p.fp && (victim_index_ == p.i1 || victim_index_ == p.i2);
}

void CuckooFilter::erase(uint64_t key) {
  const Probe p = probe(key);
  for (uint64_t i : {p.i1, p.i2}) {
    uint32_t* b = &slots_[i * kSlots];
    for (unsigned s = 0; s < kSlots; ++s) {
      if (b[s] == p.fp) {
        b[s] = 0;
        --count_;
        if (has_victim_ && (try_place(victim_index_, victim_fp_) ||
                            try_place(alt_index(victim_index_, victim_fp_), victim_fp_))) {
          has_victim_ = false;
        }
        return;
      }
    }
  }
  if (has_victim_ && victim_fp_ == p.fp && (victim_index_ == p.i1 || victim_index_ == p.i2)) {
    has_victim_ = false;
    --count_;
    return;
  }
  fail(ErrorCode::kNotFound, "fingerprint not present");
}

void CuckooFilter::write(ByteWriter& w) const {
  w.magic(kCuckooMagic);
  w.u64(seed_.value);
  w.u32(f_);
  w.u32(max_kicks_);
  w.u64(buckets_);
  w.u64(count_);
  w.u8(has_victim_ ? 1 : 0);
  w.u32(victim_fp_);
  w.u64(victim_index_);
  for (uint32_t s : slots_) w.u32(s);
}

CuckooFilter CuckooFilter::read(ByteReader& r) {
  r.expect_magic(kCuckooMagic);
  const HashSeed seed{r.u64()};
  const uint32_t f = r.u32();
  const uint32_t kicks = r.u32();
  const uint64_t buckets = r.u64();
  if (f < 1 || f > 32 || buckets == 0 || !std::has_single_bit(buckets) || buckets > (1ULL << 40)) {
    fail(ErrorCode::kFormat, "inconsistent CKF1 header");
  }
  r.expect_bytes(21 + buckets * kSlots * 4);
  CuckooFilter c(buckets, f, seed, kicks);
  c.count_ = r.u64();
  c.has_victim_ = r.u8() != 0;
  c.victim_fp_ = r.u32();
  c.victim_index_ = r.u64();
  for (uint32_t& s : c.slots_) s = r.u32();
  return c;
}

// ---------------------------------------------------------------------------
// OthelloTable

OthelloTable::OthelloTable(uint64_t capacity, HashSeed seed, double bits_per_key)
    : seed_a_(seed),
      seed_b_(next_seed(seed)),
      capacity_(std::max<uint64_t>(capacity, 1)),
      bits_per_key_(bits_per_key) {
  if (!(bits_per_key > 0)) fail(ErrorCode::kInvalidArgument, "bits per key must be positive");
  size_arrays();
  reset_graph();
}

void OthelloTable::size_arrays() {
  const double total = bits_per_key_ * static_cast<double>(capacity_);
  const auto half = std::max<uint64_t>(8, static_cast<uint64_t>(std::ceil(total / 2)));
  if (2 * half >= (1ULL << 32)) fail(ErrorCode::kInvalidArgument, "othello table too large");
  a_ = BitArray(half);
  b_ = BitArray(half);
}

void OthelloTable::reset_graph() {
  const uint64_t nodes = a_.size() + b_.size();
  a_ = BitArray(a_.size());
  b_ = BitArray(b_.size());
  parent_.resize(nodes);
  std::iota(parent_.begin(), parent_.end(), 0u);
  comp_size_.assign(nodes, 1);
  adjacent_.assign(nodes, {});
  visit_stamp_.assign(nodes, 0);
  stamp_ = 0;
}

const bool* OthelloTable::label(uint64_t key) const noexcept {
  auto it = labels_.find(key);
  return it == labels_.end() ? nullptr : &keys_[it->second].second;
}

uint32_t OthelloTable::find(uint32_t x) noexcept {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool OthelloTable::node_bit(uint32_t node) const noexcept {
  return node < a_.size() ? a_.test(node) : b_.test(node - a_.size());
}

void OthelloTable::flip_node(uint32_t node) noexcept {
  if (node < a_.size()) {
    a_.flip(node);
  } else {
    b_.flip(node - a_.size());
  }
}

void OthelloTable::flip_component(uint32_t start) {
  if (++stamp_ == 0) {
    std::fill(visit_stamp_.begin(), visit_stamp_.end(), 0);
    stamp_ = 1;
  }
  stack_.clear();
  stack_.push_back(start);
  visit_stamp_[start] = stamp_;
  while (!stack_.empty()) {
    const uint32_t u = stack_.back();
    stack_.pop_back();
    flip_node(u);
    for (uint32_t v : adjacent_[u]) {
      if (visit_stamp_[v] != stamp_) {
        visit_stamp_[v] = stamp_;
        stack_.push_back(v);
      }
    }
  }
}

bool OthelloTable::add_edge(uint32_t index) {
  const auto [key, bit] = keys_[index];
  const auto u = static_cast<uint32_t>(node_a(key));
  const auto v = static_cast<uint32_t>(a_.size() + node_b(key));
  const bool current = node_bit(u) != node_bit(v);
  uint32_t ru = find(u);
  uint32_t rv = find(v);
  if (ru == rv) return current == bit;
  if (current != bit) flip_component(comp_size_[ru] < comp_size_[rv] ? u : v);
  if (comp_size_[ru] < comp_size_[rv]) std::swap(ru, rv);
  parent_[rv] = ru;
  comp_size_[ru] += comp_size_[rv];
  adjacent_[u].push_back(v);
  adjacent_[v].push_back(u);
  return true;
}

void OthelloTable::rebuild() {
  uint32_t failures = 0;
  for (;;) {
    ++rebuilds_;
    seed_a_ = next_seed(seed_a_, 2);
    seed_b_ = next_seed(seed_b_, 2);
    if (failures == kRebuildsBeforeGrowth) {
      capacity_ += capacity_ / 8 + 1;
      size_arrays();
      failures = 0;
    }
    reset_graph();
    bool ok = true;
    for (uint32_t i = 0; ok && i < keys_.size(); ++i) ok = add_edge(i);
    if (ok) return;
    ++failures;
  }
}

OthelloTable::InsertResult OthelloTable::insert(uint64_t key, bool bit) {
  if (frozen_) fail(ErrorCode::kInvalidArgument, "deserialized othello table is query-only");
  if (auto it = labels_.find(key); it != labels_.end()) {
    if (keys_[it->second].second != bit) fail(ErrorCode::kConflictingLabel, "key already has the other label");
    return InsertResult::kOk;
  }
  if (keys_.size() >= (1ULL << 32) - 1) fail(ErrorCode::kCapacityExceeded, "othello table is full");
  const auto index = static_cast<uint32_t>(keys_.size());
  keys_.emplace_back(key, bit);
  labels_.emplace(key, index);
  if (keys_.size() > capacity_) {
    capacity_ *= 2;
    size_arrays();
    rebuild();
    return InsertResult::kRebuilt;
  }
  if (add_edge(index)) return InsertResult::kOk;
  rebuild();
  return InsertResult::kRebuilt;
}

void OthelloTable::write(ByteWriter& w) const {
  w.magic(kOthelloMagic);
  w.u64(seed_a_.value);
  w.u64(seed_b_.value);
  w.u64(a_.size());
  w.u64(b_.size());
  w.words(a_.words());
  w.words(b_.words());
}

OthelloTable OthelloTable::read(ByteReader& r) {
  r.expect_magic(kOthelloMagic);
  OthelloTable t(1);
  t.seed_a_ = HashSeed{r.u64()};
  t.seed_b_ = HashSeed{r.u64()};
  const uint64_t na = r.u64();
  const uint64_t nb = r.u64();
  if (na == 0 || nb == 0 || na > (1ULL << 34) || nb > (1ULL << 34)) {
    fail(ErrorCode::kFormat, "inconsistent OTH1 header");
  }
  r.expect_bytes((na + 63) / 64 * 8 + (nb + 63) / 64 * 8);
  t.a_ = BitArray(na);
  t.b_ = BitArray(nb);
  r.words(t.a_.mutable_words());
  r.words(t.b_.mutable_words());
  t.parent_.clear();
  t.comp_size_.clear();
  t.adjacent_.clear();
  t.visit_stamp_.clear();
  t.frozen_ = true;
  return t;
}

}  // namespace cf
