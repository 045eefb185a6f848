// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cf/chained.hpp"

namespace cf {

// Canonical Huffman code. Codes are assigned longest first, equal lengths
// in symbol order, so {a:1, b:1, \0:2} yields a=00, b=01, \0=1.
class HuffmanCodebook {
 public:
  struct Entry {
    uint32_t symbol;
    uint32_t length;
    std::string code;  // '0' / '1' characters, root first
  };

  HuffmanCodebook() = default;

  // Throws kEmptyAlphabet for no symbols and kInvalidArgument for a zero
  // count. A single symbol gets the code "0".
  static HuffmanCodebook build(const std::map<uint32_t, uint64_t>& counts);
  static HuffmanCodebook build(std::span<const uint32_t> text);
  // Rebuilds codes from (symbol, length) pairs.
  static HuffmanCodebook from_lengths(std::vector<std::pair<uint32_t, uint32_t>> lengths);

  // Entries in canonical order.
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry* find(uint32_t symbol) const noexcept;
  size_t size() const noexcept { return entries_.size(); }
  uint32_t max_length() const noexcept;

  // Sum of 2^-length; at most 1 for a prefix code.
  double kraft_sum() const noexcept;
  double average_length(const std::map<uint32_t, uint64_t>& counts) const;

  // Decoding trie: node 0 is the root; child < 0 encodes leaf ~symbol.
  struct Node {
    int64_t child[2] = {0, 0};
  };
  const std::vector<Node>& trie() const noexcept { return trie_; }

 private:
  void assign_codes();

  std::vector<Entry> entries_;
  std::vector<Node> trie_;
};

std::map<uint32_t, uint64_t> symbol_counts(std::span<const uint32_t> text);
// Shannon entropy in bits per symbol.
double entropy_of(const std::map<uint32_t, uint64_t>& counts);

// Key of bit j (1-based) of symbol i (1-based).
inline uint64_t text_key(uint64_t i, uint32_t j) noexcept { return (i << 8) | j; }

enum class BitPolarity : uint8_t {
  kOnes = 0,      // positives are the 1 bits
  kMinority = 1,  // positives are whichever bit value is rarer
};

struct TextConfig {
  AndConfig filter;
  BitPolarity polarity = BitPolarity::kMinority;
};

// Text whose i-th symbol is recovered by walking its code with membership
// queries on (i, j) keys.
class RandomAccessText {
 public:
  RandomAccessText() = default;

  // Throws kCodeTooDeep for codes longer than 255 bits and kInvalidArgument
  // for symbols missing from the codebook.
  static RandomAccessText encode(std::span<const uint32_t> text, const HuffmanCodebook& book,
                                 const TextConfig& config = {});
  static RandomAccessText encode(std::span<const uint32_t> text, const TextConfig& config = {});

  // Universe split used by encode: keys whose code bit is 1 and 0.
  static void split_bits(std::span<const uint32_t> text, const HuffmanCodebook& book,
                         std::vector<uint64_t>& ones, std::vector<uint64_t>& zeros);

  // 1-based position. queries, when given, receives the number of filter
  // lookups. Throws kInvalidArgument outside [1, length].
  uint32_t decode_at(uint64_t i, uint32_t* queries = nullptr) const;
  std::vector<uint32_t> decode_all() const;

  uint64_t length() const noexcept { return length_; }
  const HuffmanCodebook& codebook() const noexcept { return book_; }
  const ChainedAndFilter& filter() const noexcept { return filter_; }
  // True when the filter's positives are the 0 bits.
  bool flipped() const noexcept { return flipped_; }
  double bits_per_symbol() const noexcept;
  uint64_t code_bits() const noexcept { return code_bits_; }

  void write(ByteWriter& w) const;
  static RandomAccessText read(ByteReader& r);

 private:
  ChainedAndFilter filter_;
  HuffmanCodebook book_;
  uint64_t length_ = 0;
  uint64_t code_bits_ = 0;
  bool flipped_ = false;
};

}  // namespace cf
