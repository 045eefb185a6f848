// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace cf {

// Identity of the digest function; written into every serialized header so
// readers can reject blobs produced by an incompatible build.
inline constexpr std::string_view kMixerId = "fmix64x2/1";

struct HashSeed {
  uint64_t value = 0;

  friend bool operator==(HashSeed, HashSeed) = default;
};

// Odd step applied to a seed when a construction is retried.
inline constexpr uint64_t kSeedStep = 0x9E3779B97F4A7C15ULL;

inline HashSeed next_seed(HashSeed s, uint64_t steps = 1) noexcept {
  return HashSeed{s.value + steps * kSeedStep};
}

// MurmurHash3 64-bit finalizer.
constexpr uint64_t fmix64(uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

constexpr uint64_t mix64(uint64_t key, HashSeed seed) noexcept {
  uint64_t x = key ^ (seed.value * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  return fmix64(fmix64(x) ^ seed.value);
}

// Maps a uniform 32-bit value onto [0, n) without division.
constexpr uint64_t reduce32(uint32_t x, uint64_t n) noexcept {
  return (static_cast<uint64_t>(x) * n) >> 32;
}

inline uint64_t reduce64(uint64_t x, uint64_t n) noexcept {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(x) * n) >> 64);
}

// Digest regions. Slot selection reads only the high 48 bits; fingerprints
// read only the low 16 bits (expanded by rehashing when alpha > 16).
inline constexpr unsigned kFingerprintRegionBits = 16;
inline constexpr uint64_t kFingerprintRegionMask = (1ULL << kFingerprintRegionBits) - 1;

inline constexpr unsigned kMaxSlots = 4;

// Spatially coupled layout: the table is cut into segment_count equal
// segments, and a key occupies one cell in each of j consecutive segments
// starting at a window position drawn uniformly from the first
// segment_count - j + 1 segments.
struct SlotLayout {
  uint32_t j = 3;
  uint32_t window = 120;  // configured z; the effective start count may be smaller
  uint32_t segment_count = 3;
  uint64_t segment_len = 1;

  uint64_t total_cells() const noexcept { return segment_len * segment_count; }
  uint32_t start_count() const noexcept { return segment_count - j + 1; }
  bool valid() const noexcept;

  // Smallest layout with at least min_cells cells. Segments aim for the
  // length target_segment_len(keys); the start count is capped at z. keys
  // defaults to min_cells when zero.
  static SlotLayout for_cells(uint64_t min_cells, uint32_t j, uint32_t z, uint64_t keys = 0);
  static uint64_t target_segment_len(uint64_t keys, uint32_t j) noexcept;

  friend bool operator==(const SlotLayout&, const SlotLayout&) = default;
};

inline constexpr uint64_t kMinSegmentLen = 4;

// Expansion below which peeling j-wise coupled hypergraphs with n edges
// fails often at finite n. Tends to 1.125 at n = 10^6 for j = 3.
double finite_size_expansion(uint64_t n, uint32_t j) noexcept;

struct SlotSet {
  std::array<uint64_t, kMaxSlots> cell{};
  uint32_t count = 0;

  const uint64_t* begin() const noexcept { return cell.data(); }
  const uint64_t* end() const noexcept { return cell.data() + count; }
};

SlotSet derive_slots(uint64_t digest, const SlotLayout& layout) noexcept;

// Low alpha bits of the expanded fingerprint word. Prefix-stable: the value
// for alpha is the low alpha bits of the value for any larger alpha.
uint64_t derive_fingerprint(uint64_t digest, unsigned alpha) noexcept;

inline uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

}  // namespace cf
