// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

// Template definitions for bloomier.hpp.

#include <algorithm>
#include <cassert>
#include <string>

#include "cf/error.hpp"

namespace cf {

template <typename EdgeFn>
std::optional<PeelOrder> peel(uint32_t edge_count, uint64_t cell_count, EdgeFn&& edge_cells) {
  // Per cell: number of unpeeled incident edges and the XOR of their ids.
  // The sole remaining edge of a degree-1 cell is then its XOR.
  std::vector<uint32_t> degree(cell_count, 0);
  std::vector<uint32_t> edge_xor(cell_count, 0);
  for (uint32_t e = 0; e < edge_count; ++e) {
    for (uint64_t c : edge_cells(e)) {
      ++degree[c];
      edge_xor[c] ^= e;
    }
  }
  std::vector<uint64_t> queue;
  queue.reserve(cell_count / 4 + 16);
  for (uint64_t c = 0; c < cell_count; ++c) {
    if (degree[c] == 1) queue.push_back(c);
  }
  PeelOrder order;
  order.key.reserve(edge_count);
  order.place.reserve(edge_count);
  for (size_t head = 0; head < queue.size(); ++head) {
    const uint64_t c = queue[head];
    if (degree[c] != 1) continue;
    const uint32_t e = edge_xor[c];
    order.key.push_back(e);
    order.place.push_back(c);
    for (uint64_t other : edge_cells(e)) {
      --degree[other];
      edge_xor[other] ^= e;
      if (degree[other] == 1) queue.push_back(other);
    }
  }
  if (order.key.size() != edge_count) return std::nullopt;
  return order;
}

namespace detail {

uint64_t expanded_cells(uint64_t keys, const RetrievalConfig& config);
bool has_duplicates(std::span<const uint64_t> keys);

}  // namespace detail

template <typename ValueFn>
RetrievalTable RetrievalTable::build(std::span<const uint64_t> keys, unsigned alpha,
                                     const RetrievalConfig& config, uint64_t extra_capacity,
                                     ValueFn&& value_of) {
  if (alpha > 64) fail(ErrorCode::kInvalidArgument, "alpha exceeds 64 bits");
  if (config.c_den == 0 || config.c_num < config.c_den) {
    fail(ErrorCode::kInvalidArgument, "expansion C must be at least 1");
  }
  if (keys.size() >= (1ULL << 32)) fail(ErrorCode::kInvalidArgument, "too many keys");
  const uint32_t n = static_cast<uint32_t>(keys.size());

  RetrievalTable t;
  t.config_ = config;
  t.encoded_count_ = n;
  t.layout_ = SlotLayout::for_cells(detail::expanded_cells(n + extra_capacity, config), config.j,
                                    config.z, n + extra_capacity);
  const uint64_t m = t.layout_.total_cells();

  std::vector<uint64_t> digests(n);
  HashSeed seed = config.seed;
  bool checked_duplicates = false;
  for (uint32_t attempt = 0; attempt < std::max<uint32_t>(1, config.max_retries); ++attempt) {
    for (uint32_t i = 0; i < n; ++i) digests[i] = mix64(keys[i], seed);
    const SlotLayout& layout = t.layout_;
    auto order = peel(n, m, [&](uint32_t e) { return derive_slots(digests[e], layout); });
    if (!order) {
      if (!checked_duplicates) {
        checked_duplicates = true;
        if (detail::has_duplicates(keys)) fail(ErrorCode::kDuplicateKey, "duplicate key in input");
      }
      seed = next_seed(seed);
      continue;
    }
    std::vector<uint64_t> cells(m, 0);
    for (size_t k = order->key.size(); k-- > 0;) {
      const uint32_t e = order->key[k];
      const uint64_t place = order->place[k];
      uint64_t v = value_of(e, digests[e]) & low_mask(alpha);
      for (uint64_t c : derive_slots(digests[e], layout)) {
        if (c != place) v ^= cells[c];
      }
      assert(cells[place] == 0);
      cells[place] = v;
    }
    t.cells_ = PackedCells(m, alpha);
    for (uint64_t c = 0; c < m; ++c) t.cells_.set(c, cells[c]);
    t.seed_ = seed;
    t.attempts_ = attempt + 1;
    return t;
  }
  fail(ErrorCode::kPeelingFailed, "peeling failed after " + std::to_string(config.max_retries) +
                                      " seeds (" + std::to_string(n) + " keys, " +
                                      std::to_string(m) + " cells)");
}

}  // namespace cf
