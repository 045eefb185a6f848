// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Test-side oracles, written without calling into the library.
namespace cftest {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr uint64_t scramble(uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Keys scramble(salt * 2^40 + i) for i in [begin, end). Disjoint index
// ranges under the same salt give disjoint key sets.
inline std::vector<uint64_t> keys(uint64_t begin, uint64_t end, uint64_t salt = 1) {
  std::vector<uint64_t> out;
  out.reserve(end - begin);
  for (uint64_t i = begin; i < end; ++i) out.push_back(scramble((salt << 40) + i));
  return out;
}

struct Universe {
  std::vector<uint64_t> positives;
  std::vector<uint64_t> negatives;
};

inline Universe make_universe(uint64_t n, double lambda, uint64_t salt = 1) {
  const auto neg = static_cast<uint64_t>(std::llround(lambda * static_cast<double>(n)));
  return {keys(0, n, salt), keys(n, n + neg, salt)};
}

inline long double log2l_(long double x) { return std::log2(x); }

// Binary entropy in extended precision.
inline long double entropy(long double p) {
  if (p <= 0.0L || p >= 1.0L) return 0.0L;
  return -p * log2l_(p) - (1.0L - p) * log2l_(1.0L - p);
}

// Per-item limit of log2 C((lambda+1)n, n) - log2 C((eps*lambda+1)n, n).
inline long double lower_bound(long double eps, long double lambda) {
  const long double a = (lambda + 1.0L) * entropy(1.0L / (lambda + 1.0L));
  const long double m = eps * lambda + 1.0L;
  const long double b = m * entropy(1.0L / m);
  return a - b;
}

// 3-sigma binomial acceptance of an observed count.
inline bool within_sigma(uint64_t hits, uint64_t trials, double p, double sigmas = 3.0) {
  const double mean = p * static_cast<double>(trials);
  const double sd = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
  return std::fabs(static_cast<double>(hits) - mean) <= sigmas * sd;
}

// (2r / (1 - e^{-2r}) - 1)^{-1}
inline double cuckoo_lambda(double r) {
  return 1.0 / (2.0 * r / (1.0 - std::exp(-2.0 * r)) - 1.0);
}

}  // namespace cftest
