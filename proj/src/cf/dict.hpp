// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>

#include "cf/chained.hpp"

namespace cf {

// Static dictionary: an exact "&" filter over a finite universe, with its
// space compared against the entropy of the membership bit.
struct Dictionary {
  ChainedAndFilter filter;
  AndBuildReport report;
  double lambda = 0.0;
  double bits_per_universe_item = 0.0;
  double entropy_per_item = 0.0;  // H(1 / (lambda + 1))
  double overhead_ratio = 0.0;    // bits_per_universe_item / entropy_per_item
  double bound_ratio = 0.0;       // C * 4 / (5 log 5 - 8)
};

Dictionary dict_build(std::span<const uint64_t> positives, std::span<const uint64_t> negatives,
                      const AndConfig& config = {});

}  // namespace cf
