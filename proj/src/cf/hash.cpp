// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/hash.hpp"

#include <algorithm>
#include <cmath>

#include "cf/error.hpp"

namespace cf {

namespace {

constexpr uint64_t kSlotStream1 = 0xA0761D6478BD642FULL;
constexpr uint64_t kSlotStream2 = 0xE7037ED1A0B428DBULL;
constexpr uint64_t kFingerprintStream = 0x8EBC6AF09C88C6E3ULL;

}  // namespace

bool SlotLayout::valid() const noexcept {
  return j >= 2 && j <= kMaxSlots && segment_count >= j && segment_len >= 1 &&
         segment_len < (1ULL << 32) && segment_count - j + 1 <= 65536;
}

SlotLayout SlotLayout::for_cells(uint64_t min_cells, uint32_t j, uint32_t z, uint64_t keys) {
  if (j < 2 || j > kMaxSlots) fail(ErrorCode::kInvalidArgument, "slot count j must be in [2, 4]");
  if (z < 1 || z > 65535) fail(ErrorCode::kInvalidArgument, "window z must be in [1, 65535]");
  min_cells = std::max<uint64_t>(min_cells, j);
  const uint64_t segments = min_cells / target_segment_len(keys ? keys : min_cells, j);
  const uint64_t starts = std::clamp<uint64_t>(segments > j - 1 ? segments - (j - 1) : 1, 1, z);
  SlotLayout layout;
  layout.j = j;
  layout.window = z;
  layout.segment_count = static_cast<uint32_t>(starts + j - 1);
  layout.segment_len = (min_cells + layout.segment_count - 1) / layout.segment_count;
  if (!layout.valid()) fail(ErrorCode::kInvalidArgument, "table too large for slot layout");
  return layout;
}

uint64_t SlotLayout::target_segment_len(uint64_t keys, uint32_t j) noexcept {
  if (keys < 2) return kMinSegmentLen;
  const double lg = std::log(static_cast<double>(keys));
  const double e = j >= 4 ? lg / std::log(2.91) - 0.5 : lg / std::log(3.33) + 2.25;
  const double len = std::exp2(std::clamp(e - 1.0, 2.0, 18.0));
  return std::max<uint64_t>(kMinSegmentLen, static_cast<uint64_t>(std::llround(len)));
}

double finite_size_expansion(uint64_t n, uint32_t j) noexcept {
  if (n < 2) return 2.0;
  const double ratio = std::max(1.0, std::log(1e6) / std::log(static_cast<double>(n)));
  return j >= 4 ? 0.77 + 0.305 * ratio : 0.875 + 0.25 * ratio;
}

SlotSet derive_slots(uint64_t digest, const SlotLayout& layout) noexcept {
  const uint64_t h = digest >> kFingerprintRegionBits;
  const uint64_t start = (h * layout.start_count()) >> (64 - kFingerprintRegionBits);
  const uint64_t r1 = fmix64(h ^ kSlotStream1);
  const uint64_t r2 = layout.j > 2 ? fmix64(h ^ kSlotStream2) : 0;
  const uint32_t draws[kMaxSlots] = {static_cast<uint32_t>(r1), static_cast<uint32_t>(r1 >> 32),
                                     static_cast<uint32_t>(r2), static_cast<uint32_t>(r2 >> 32)};
  SlotSet out;
  out.count = layout.j;
  for (uint32_t i = 0; i < layout.j; ++i) {
    out.cell[i] = (start + i) * layout.segment_len + reduce32(draws[i], layout.segment_len);
  }
  return out;
}

uint64_t derive_fingerprint(uint64_t digest, unsigned alpha) noexcept {
  const uint64_t region = digest & kFingerprintRegionMask;
  uint64_t word = region;
  if (alpha > kFingerprintRegionBits) {
    word |= fmix64(region ^ kFingerprintStream) << kFingerprintRegionBits;
  }
  return word & low_mask(alpha);
}

}  // namespace cf
