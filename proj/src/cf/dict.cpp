// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/dict.hpp"

namespace cf {

Dictionary dict_build(std::span<const uint64_t> positives, std::span<const uint64_t> negatives,
                      const AndConfig& config) {
  Dictionary d;
  d.filter = ChainedAndFilter::build_exact(positives, negatives, config, &d.report);
  const uint64_t universe = positives.size() + negatives.size();
  d.lambda = positives.empty() ? 0.0 : static_cast<double>(negatives.size()) / positives.size();
  if (universe == 0) return d;
  d.bits_per_universe_item = static_cast<double>(d.filter.size_bits()) / static_cast<double>(universe);
  d.entropy_per_item = bounds::entropy(static_cast<double>(positives.size()) / static_cast<double>(universe));
  d.overhead_ratio = d.entropy_per_item > 0 ? d.bits_per_universe_item / d.entropy_per_item : 0.0;
  d.bound_ratio = config.retrieval.expansion() * bounds::dictionary_overhead_factor();
  return d;
}

}  // namespace cf
