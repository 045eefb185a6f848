// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/bits.hpp"

#include <bit>

namespace cf {

PackedCells::PackedCells(uint64_t count, unsigned width)
    : count_(count),
      width_(width),
      mask_(width >= 64 ? ~0ULL : ((1ULL << width) - 1)),
      words_((count * width + 63) / 64, 0) {
  if (width > 64) fail(ErrorCode::kInvalidArgument, "cell width exceeds 64 bits");
}

void PackedCells::set(uint64_t i, uint64_t value) noexcept {
  if (width_ == 0) return;
  value &= mask_;
  const uint64_t bit = i * width_;
  const uint64_t word = bit >> 6;
  const unsigned shift = bit & 63;
  words_[word] = (words_[word] & ~(mask_ << shift)) | (value << shift);
  if (shift + width_ > 64) {
    const unsigned spill = shift + width_ - 64;
    const uint64_t hi_mask = (1ULL << spill) - 1;
    words_[word + 1] = (words_[word + 1] & ~hi_mask) | (value >> (64 - shift));
  }
}

uint64_t BitArray::popcount() const noexcept {
  uint64_t n = 0;
  for (uint64_t w : words_) n += static_cast<uint64_t>(std::popcount(w));
  return n;
}

void ByteReader::expect_magic(std::string_view m) {
  need(m.size());
  if (std::string_view(reinterpret_cast<const char*>(in_.data() + pos_), m.size()) != m) {
    fail(ErrorCode::kFormat, "bad magic, expected " + std::string(m));
  }
  pos_ += m.size();
}

std::string_view ByteReader::peek_magic() const {
  need(4);
  return std::string_view(reinterpret_cast<const char*>(in_.data() + pos_), 4);
}

std::string ByteReader::str() {
  const uint16_t n = u16();
  need(n);
  std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
  pos_ += n;
  return s;
}

std::span<const uint8_t> ByteReader::blob() {
  const uint64_t n = u64();
  need(n);
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

}  // namespace cf
