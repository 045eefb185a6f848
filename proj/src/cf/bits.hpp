// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cf/error.hpp"

namespace cf {

// Fixed-width unsigned cells packed little-endian into 64-bit words. A cell
// may straddle two words when width does not divide 64.
class PackedCells {
 public:
  PackedCells() = default;
  PackedCells(uint64_t count, unsigned width);

  uint64_t size() const noexcept { return count_; }
  unsigned width() const noexcept { return width_; }
  uint64_t bit_size() const noexcept { return count_ * width_; }

  uint64_t get(uint64_t i) const noexcept {
    if (width_ == 0) return 0;
    const uint64_t bit = i * width_;
    const uint64_t word = bit >> 6;
    const unsigned shift = bit & 63;
    uint64_t v = words_[word] >> shift;
    if (shift + width_ > 64) v |= words_[word + 1] << (64 - shift);
    return v & mask_;
  }

  void set(uint64_t i, uint64_t value) noexcept;

  std::span<const uint64_t> words() const noexcept { return words_; }
  std::vector<uint64_t>& mutable_words() noexcept { return words_; }

  friend bool operator==(const PackedCells&, const PackedCells&) = default;

 private:
  uint64_t count_ = 0;
  unsigned width_ = 0;
  uint64_t mask_ = 0;
  std::vector<uint64_t> words_;
};

// Plain bit array used by the dynamic filters.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(uint64_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  uint64_t size() const noexcept { return bits_; }
  bool test(uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(uint64_t i) noexcept { words_[i >> 6] |= 1ULL << (i & 63); }
  void flip(uint64_t i) noexcept { words_[i >> 6] ^= 1ULL << (i & 63); }
  void assign(uint64_t i, bool v) noexcept {
    if (test(i) != v) flip(i);
  }
  uint64_t popcount() const noexcept;

  std::span<const uint64_t> words() const noexcept { return words_; }
  std::vector<uint64_t>& mutable_words() noexcept { return words_; }

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  uint64_t bits_ = 0;
  std::vector<uint64_t> words_;
};

// Little-endian serialization helpers shared by every on-disk format.
class ByteWriter {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) { put(v, 2); }
  void u32(uint32_t v) { put(v, 4); }
  void u64(uint64_t v) { put(v, 8); }
  void f64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void magic(std::string_view m) { out_.insert(out_.end(), m.begin(), m.end()); }
  void str(std::string_view s) {
    u16(static_cast<uint16_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void words(std::span<const uint64_t> w) {
    for (uint64_t x : w) u64(x);
  }
  void blob(std::span<const uint8_t> b) {
    u64(b.size());
    out_.insert(out_.end(), b.begin(), b.end());
  }

  std::vector<uint8_t> take() { return std::move(out_); }
  std::vector<uint8_t>& buffer() { return out_; }

 private:
  void put(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t u8() { return static_cast<uint8_t>(get(1)); }
  uint16_t u16() { return static_cast<uint16_t>(get(2)); }
  uint32_t u32() { return static_cast<uint32_t>(get(4)); }
  uint64_t u64() { return get(8); }
  double f64() {
    uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  void expect_magic(std::string_view m);
  std::string str();
  void words(std::vector<uint64_t>& w) {
    for (auto& x : w) x = u64();
  }
  std::span<const uint8_t> blob();
  std::string_view peek_magic() const;

  bool done() const noexcept { return pos_ == in_.size(); }
  size_t remaining() const noexcept { return in_.size() - pos_; }
  // Throws kFormat unless at least n more bytes are available.
  void expect_bytes(uint64_t n) const {
    if (remaining() < n) fail(ErrorCode::kFormat, "truncated input");
  }
  size_t position() const noexcept { return pos_; }

 private:
  void need(size_t n) const {
    if (in_.size() - pos_ < n) fail(ErrorCode::kFormat, "truncated input");
  }
  uint64_t get(int n) {
    need(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += static_cast<size_t>(n);
    return v;
  }

  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace cf
