// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/huffman.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string_view>
#include <tuple>

#include "cf/error.hpp"

namespace cf {

namespace {

constexpr std::string_view kTextMagic = "CFH1";
constexpr uint16_t kTextVersion = 1;
constexpr uint32_t kMaxCodeLength = 255;

}  // namespace

HuffmanCodebook HuffmanCodebook::build(const std::map<uint32_t, uint64_t>& counts) {
  if (counts.empty()) fail(ErrorCode::kEmptyAlphabet, "no symbols to code");
  for (const auto& [sym, c] : counts) {
    if (c == 0) fail(ErrorCode::kInvalidArgument, "symbol count must be positive");
  }
  if (counts.size() == 1) return from_lengths({{counts.begin()->first, 1}});

  // Nodes 0..k-1 are leaves in symbol order; merged nodes follow.
  struct Node {
    uint64_t weight;
    int64_t left = -1;
    int64_t right = -1;
  };
  std::vector<Node> nodes;
  std::vector<uint32_t> symbols;
  for (const auto& [sym, c] : counts) {
    nodes.push_back({c});
    symbols.push_back(sym);
  }
  using Item = std::pair<uint64_t, int64_t>;  // (weight, node id), smallest first
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (size_t i = 0; i < nodes.size(); ++i) heap.emplace(nodes[i].weight, static_cast<int64_t>(i));
  while (heap.size() > 1) {
    const auto [w1, a] = heap.top();
    heap.pop();
    const auto [w2, b] = heap.top();
    heap.pop();
    nodes.push_back({w1 + w2, a, b});
    heap.emplace(w1 + w2, static_cast<int64_t>(nodes.size() - 1));
  }

  std::vector<std::pair<uint32_t, uint32_t>> lengths;
  std::vector<std::pair<int64_t, uint32_t>> stack{{static_cast<int64_t>(nodes.size() - 1), 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    const Node& nd = nodes[static_cast<size_t>(id)];
    if (nd.left < 0) {
      lengths.emplace_back(symbols[static_cast<size_t>(id)], depth);
      continue;
    }
    stack.emplace_back(nd.left, depth + 1);
    stack.emplace_back(nd.right, depth + 1);
  }
  return from_lengths(std::move(lengths));
}

HuffmanCodebook HuffmanCodebook::build(std::span<const uint32_t> text) {
  return build(symbol_counts(text));
}

HuffmanCodebook HuffmanCodebook::from_lengths(std::vector<std::pair<uint32_t, uint32_t>> lengths) {
  if (lengths.empty()) fail(ErrorCode::kEmptyAlphabet, "no symbols to code");
  HuffmanCodebook book;
  for (const auto& [sym, len] : lengths) {
    if (len == 0) fail(ErrorCode::kFormat, "zero code length");
    if (len > kMaxCodeLength) fail(ErrorCode::kCodeTooDeep, "code longer than 255 bits");
    book.entries_.push_back({sym, len, {}});
  }
  std::sort(book.entries_.begin(), book.entries_.end(), [](const Entry& a, const Entry& b) {
    return std::tie(b.length, a.symbol) < std::tie(a.length, b.symbol);
  });
  std::vector<uint32_t> syms;
  for (const Entry& e : book.entries_) syms.push_back(e.symbol);
  std::sort(syms.begin(), syms.end());
  if (std::adjacent_find(syms.begin(), syms.end()) != syms.end()) {
    fail(ErrorCode::kFormat, "duplicate symbol in code lengths");
  }
  book.assign_codes();
  return book;
}

void HuffmanCodebook::assign_codes() {
  // Codes are consumed left to right in the code tree; moving to a shorter
  // length rounds up to the next node boundary at that depth.
  std::vector<uint8_t> code;  // current code, root first
  for (size_t i = 0; i < entries_.size(); ++i) {
    Entry& e = entries_[i];
    if (i == 0) {
      code.assign(e.length, 0);
    } else {
      // Increment as a binary number.
      size_t pos = code.size();
      while (pos > 0 && code[pos - 1] == 1) code[--pos] = 0;
      if (pos == 0) fail(ErrorCode::kFormat, "code lengths violate the Kraft inequality");
      code[pos - 1] = 1;
      // Truncate to the shorter length, rounding up.
      bool carry = false;
      for (size_t k = e.length; k < code.size(); ++k) carry = carry || code[k] != 0;
      code.resize(e.length);
      if (carry) {
        size_t p = code.size();
        while (p > 0 && code[p - 1] == 1) code[--p] = 0;
        if (p == 0) fail(ErrorCode::kFormat, "code lengths violate the Kraft inequality");
        code[p - 1] = 1;
      }
    }
    e.code.clear();
    for (uint8_t b : code) e.code.push_back(b ? '1' : '0');
  }

  trie_.assign(1, Node{});
  for (const Entry& e : entries_) {
    size_t node = 0;
    for (size_t k = 0; k < e.code.size(); ++k) {
      const int bit = e.code[k] == '1';
      int64_t& child = trie_[node].child[bit];
      if (child < 0) fail(ErrorCode::kFormat, "code is not prefix-free");
      if (k + 1 == e.code.size()) {
        if (child != 0) fail(ErrorCode::kFormat, "code is not prefix-free");
        child = ~static_cast<int64_t>(e.symbol);
      } else {
        if (child == 0) {
          child = static_cast<int64_t>(trie_.size());
          trie_.emplace_back();
        }
        node = static_cast<size_t>(trie_[node].child[bit]);
      }
    }
  }
}

const HuffmanCodebook::Entry* HuffmanCodebook::find(uint32_t symbol) const noexcept {
  for (const Entry& e : entries_) {
    if (e.symbol == symbol) return &e;
  }
  return nullptr;
}

uint32_t HuffmanCodebook::max_length() const noexcept {
  uint32_t m = 0;
  for (const Entry& e : entries_) m = std::max(m, e.length);
  return m;
}

double HuffmanCodebook::kraft_sum() const noexcept {
  double s = 0.0;
  for (const Entry& e : entries_) s += std::ldexp(1.0, -static_cast<int>(e.length));
  return s;
}

double HuffmanCodebook::average_length(const std::map<uint32_t, uint64_t>& counts) const {
  double bits = 0.0, total = 0.0;
  for (const auto& [sym, c] : counts) {
    const Entry* e = find(sym);
    if (!e) fail(ErrorCode::kInvalidArgument, "symbol missing from codebook");
    bits += static_cast<double>(c) * e->length;
    total += static_cast<double>(c);
  }
  return total == 0.0 ? 0.0 : bits / total;
}

std::map<uint32_t, uint64_t> symbol_counts(std::span<const uint32_t> text) {
  std::map<uint32_t, uint64_t> counts;
  for (uint32_t s : text) ++counts[s];
  return counts;
}

double entropy_of(const std::map<uint32_t, uint64_t>& counts) {
  double total = 0.0;
  for (const auto& kv : counts) total += static_cast<double>(kv.second);
  double h = 0.0;
  for (const auto& kv : counts) {
    const double p = static_cast<double>(kv.second) / total;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// ---------------------------------------------------------------------------
// RandomAccessText

void RandomAccessText::split_bits(std::span<const uint32_t> text, const HuffmanCodebook& book,
                                  std::vector<uint64_t>& ones, std::vector<uint64_t>& zeros) {
  ones.clear();
  zeros.clear();
  std::map<uint32_t, const HuffmanCodebook::Entry*> lookup;
  for (const auto& e : book.entries()) lookup[e.symbol] = &e;
  if (text.size() >= (1ULL << 56)) fail(ErrorCode::kInvalidArgument, "text too long for (i, j) keys");
  for (uint64_t i = 0; i < text.size(); ++i) {
    auto it = lookup.find(text[i]);
    if (it == lookup.end()) fail(ErrorCode::kInvalidArgument, "symbol missing from codebook");
    const std::string& code = it->second->code;
    if (code.size() > kMaxCodeLength) fail(ErrorCode::kCodeTooDeep, "code longer than 255 bits");
    for (uint32_t j = 1; j <= code.size(); ++j) {
      (code[j - 1] == '1' ? ones : zeros).push_back(text_key(i + 1, j));
    }
  }
}

RandomAccessText RandomAccessText::encode(std::span<const uint32_t> text, const HuffmanCodebook& book,
                                          const TextConfig& config) {
  std::vector<uint64_t> ones, zeros;
  split_bits(text, book, ones, zeros);
  RandomAccessText t;
  t.book_ = book;
  t.length_ = text.size();
  t.code_bits_ = ones.size() + zeros.size();
  t.flipped_ = config.polarity == BitPolarity::kMinority && zeros.size() < ones.size();
  t.filter_ = t.flipped_ ? ChainedAndFilter::build_exact(zeros, ones, config.filter)
                         : ChainedAndFilter::build_exact(ones, zeros, config.filter);
  return t;
}

RandomAccessText RandomAccessText::encode(std::span<const uint32_t> text, const TextConfig& config) {
  return encode(text, HuffmanCodebook::build(text), config);
}

uint32_t RandomAccessText::decode_at(uint64_t i, uint32_t* queries) const {
  if (i < 1 || i > length_) fail(ErrorCode::kInvalidArgument, "position outside the text");
  const auto& trie = book_.trie();
  size_t node = 0;
  for (uint32_t j = 1; j <= kMaxCodeLength; ++j) {
    const bool bit = filter_.query(text_key(i, j)) != flipped_;
    const int64_t child = trie[node].child[bit ? 1 : 0];
    if (child < 0) {
      if (queries) *queries = j;
      return static_cast<uint32_t>(~child);
    }
    if (child == 0) break;
    node = static_cast<size_t>(child);
  }
  fail(ErrorCode::kFormat, "filter walk left the code tree");
}

std::vector<uint32_t> RandomAccessText::decode_all() const {
  std::vector<uint32_t> out(length_);
  for (uint64_t i = 0; i < length_; ++i) out[i] = decode_at(i + 1);
  return out;
}

double RandomAccessText::bits_per_symbol() const noexcept {
  return length_ == 0 ? 0.0 : static_cast<double>(filter_.size_bits()) / static_cast<double>(length_);
}

void RandomAccessText::write(ByteWriter& w) const {
  w.magic(kTextMagic);
  w.u16(kTextVersion);
  w.u8(flipped_ ? 1 : 0);
  w.u8(0);
  w.u64(length_);
  w.u64(code_bits_);
  w.u32(static_cast<uint32_t>(book_.size()));
  for (const auto& e : book_.entries()) {
    w.u32(e.symbol);
    w.u16(static_cast<uint16_t>(e.length));
  }
  write_container(w, filter_);
}

RandomAccessText RandomAccessText::read(ByteReader& r) {
  r.expect_magic(kTextMagic);
  if (r.u16() != kTextVersion) fail(ErrorCode::kFormat, "unsupported CFH1 version");
  RandomAccessText t;
  t.flipped_ = r.u8() != 0;
  r.u8();
  t.length_ = r.u64();
  t.code_bits_ = r.u64();
  const uint32_t count = r.u32();
  r.expect_bytes(static_cast<uint64_t>(count) * 6);
  std::vector<std::pair<uint32_t, uint32_t>> lengths;
  for (uint32_t k = 0; k < count; ++k) {
    const uint32_t sym = r.u32();
    lengths.emplace_back(sym, r.u16());
  }
  t.book_ = HuffmanCodebook::from_lengths(std::move(lengths));
  ChainedFilter f = read_container(r);
  auto* a = std::get_if<ChainedAndFilter>(&f);
  if (!a) fail(ErrorCode::kFormat, "CFH1 text must embed an and-filter");
  t.filter_ = std::move(*a);
  return t;
}

}  // namespace cf
