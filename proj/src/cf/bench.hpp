// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cf {

struct BenchRecord {
  std::string scenario;
  uint64_t n = 0;
  double lambda = 0.0;
  double epsilon = 0.0;
  double bits_per_item = 0.0;
  double space_mb = 0.0;
  double construct_mops = 0.0;
  double query_mops = 0.0;
  double fpr_measured = 0.0;
  uint64_t errors = 0;
  double stage2_touch = 0.0;
  uint32_t max_extra_reads = 0;
  uint32_t train_rounds = 0;
  uint64_t seed = 0;
};

inline constexpr std::string_view kBenchSchemaComment = "# chainedfilter bench schema v1";
inline constexpr std::string_view kBenchHeader =
    "scenario,n,lambda,epsilon,bits_per_item,space_mb,construct_mops,query_mops,fpr_measured,"
    "errors,stage2_touch,max_extra_reads,train_rounds,seed";

struct BenchOptions {
  // Multiplies every problem size; 1.0 is the full desk scale.
  double scale = 1.0;
  std::vector<uint64_t> seeds{0xC0FFEE};
};

// Suites: "dict", "huffman", "cuckoo", "lsm". Throws kInvalidArgument for
// anything else.
std::vector<BenchRecord> run_bench(std::string_view suite, const BenchOptions& options = {});
bool is_bench_suite(std::string_view suite) noexcept;

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRecord& r);

}  // namespace cf
