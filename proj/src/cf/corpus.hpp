// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace cf {

// Symbol k of an omega-exponential alphabet has weight omega^k; the
// alphabet has floor(log length / log omega) + 1 symbols, at most 26.
std::vector<double> omega_distribution(double omega, uint64_t length);

// Draws length symbols (0-based ids) from omega_distribution.
std::vector<uint32_t> omega_corpus(double omega, uint64_t length, uint64_t seed);

// Deterministic distinct 64-bit keys. Streams with distinct salts below
// 2^32 are disjoint.
std::vector<uint64_t> distinct_keys(uint64_t count, uint64_t salt);

}  // namespace cf
