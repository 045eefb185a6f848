// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cf/error.hpp"
#include "cf/hash.hpp"

namespace cf {

std::vector<double> omega_distribution(double omega, uint64_t length) {
  if (!(omega > 1.0)) fail(ErrorCode::kDomain, "omega must exceed 1");
  const double logs = std::log(static_cast<double>(std::max<uint64_t>(length, 2))) / std::log(omega);
  const auto k = std::min<uint64_t>(26, static_cast<uint64_t>(std::floor(logs)) + 1);
  std::vector<double> p(std::max<uint64_t>(k, 1));
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) total += p[i] = std::pow(omega, static_cast<double>(i));
  for (double& x : p) x /= total;
  return p;
}

std::vector<uint32_t> omega_corpus(double omega, uint64_t length, uint64_t seed) {
  const std::vector<double> p = omega_distribution(omega, length);
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  cdf.back() = 1.0;
  std::mt19937_64 rng(seed);
  std::vector<uint32_t> out(length);
  for (auto& s : out) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    s = static_cast<uint32_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    s = std::min<uint32_t>(s, static_cast<uint32_t>(p.size() - 1));
  }
  return out;
}

std::vector<uint64_t> distinct_keys(uint64_t count, uint64_t salt) {
  // fmix64 is a bijection, so distinct inputs give distinct keys.
  if (count > (1ULL << 32)) fail(ErrorCode::kInvalidArgument, "too many keys for one stream");
  std::vector<uint64_t> out(count);
  const uint64_t base = (salt & 0xFFFFFFFFULL) << 32;
  for (uint64_t i = 0; i < count; ++i) out[i] = fmix64(base | i);
  return out;
}

}  // namespace cf
