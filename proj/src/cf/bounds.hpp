// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Closed-form space accounting for membership filters. All logarithms are
// base 2 and all asymptotic o(1) terms are dropped. Space figures are bits
// per positive item and, unless stated otherwise, exclude the table
// expansion constant of the underlying elementary filter.
namespace cf::bounds {

inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kInvLn2 = 1.44269504088896340736;  // also C' for Bloom layers
inline constexpr double kE = 2.71828182845904523536;

// Smallest negative-positive ratio for which a two-stage split pays off.
inline constexpr double kMinChainLambda = kInvLn2;

struct ProblemParams {
  double epsilon = 0.0;
  double lambda = 1.0;
  std::optional<uint64_t> n;

  // Throws kDomain unless 0 <= epsilon <= 1, lambda > 0 and n >= 1.
  void validate() const;
};

enum class Strategy : uint8_t { kA = 0, kB = 1, kDegenerateApprox = 2, kDegenerateExact = 3 };

const char* to_string(Strategy s) noexcept;

struct TwoStageParams {
  Strategy strategy = Strategy::kA;
  double alpha = 0.0;           // stage-1 fingerprint bits
  double beta = 0.0;            // stage-2 extra capacity per positive item
  double space_per_item = 0.0;  // in units of C
};

// Binary entropy with 0 log 0 = 0.
double entropy(double p);

// Information-theoretic minimum bits per positive item for (epsilon, lambda).
double space_lower_bound(const ProblemParams& p);
double space_lower_bound(double epsilon, double lambda);

// f(e1*e2, l) - f(e1, l) - f(e2, e1*l); identically zero in exact arithmetic.
double chain_rule_residual(double eps1, double eps2, double lambda);

// floor(log l) + 1 + l / 2^floor(log l); kDegenerateLambda when l <= 1/ln 2.
double exact_chain_space(double lambda);

TwoStageParams optimal_two_stage_params(const ProblemParams& p);

struct AndSplit {
  int stages = 0;
  std::vector<double> rates;
  double space = 0.0;  // stages + l / 2^(stages-1) - 2 e l, units of C
};

AndSplit optimal_and_split(const ProblemParams& p);

// Space of the "&~" chain with ratio delta between successive layers, in
// units of C'. The limit delta -> 1 is log(4 e l).
double andnot_space(double lambda, double delta);
// Rounded bound log(16 l) realized by the delta = 1/2 schedule.
double andnot_space_practical(double lambda);
double andnot_space_limit(double lambda);

// Negative-positive ratio of a two-table cuckoo hash at load factor r, where
// table-1 residents count as negatives.
double cuckoo_negative_ratio(double r);

bool huffman_overhead_check(double avg_len, double entropy_h);
inline constexpr double kHuffmanOverheadBound = 0.22;

// 4 / (5 log 5 - 8); multiplied by C gives the static-dictionary overhead bound.
double dictionary_overhead_factor();

}  // namespace cf::bounds
