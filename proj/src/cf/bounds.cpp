// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cf/error.hpp"

namespace cf::bounds {

namespace {

// (x+1) H(1/(x+1)) written as (x+1) log(x+1) - x log x, which stays accurate
// for large x where H(1/(x+1)) underflows relative precision.
double scaled_entropy(double x) {
  if (x <= 0.0) return 0.0;
  return (std::log1p(x) + x * std::log1p(1.0 / x)) * kInvLn2;
}

}  // namespace

const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::kA: return "A";
    case Strategy::kB: return "B";
    case Strategy::kDegenerateApprox: return "DEGENERATE_APPROX";
    case Strategy::kDegenerateExact: return "DEGENERATE_EXACT";
  }
  return "?";
}

void ProblemParams::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail(ErrorCode::kDomain, "epsilon must lie in [0, 1]");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorCode::kDomain, "lambda must be positive");
  if (n && *n == 0) fail(ErrorCode::kDomain, "n must be at least 1");
}

double entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::kDomain, "probability outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double space_lower_bound(const ProblemParams& p) {
  p.validate();
  const double v = scaled_entropy(p.lambda) - scaled_entropy(p.epsilon * p.lambda);
  return v < 0.0 ? 0.0 : v;
}

double space_lower_bound(double epsilon, double lambda) {
  return space_lower_bound(ProblemParams{epsilon, lambda, std::nullopt});
}

double chain_rule_residual(double eps1, double eps2, double lambda) {
  return space_lower_bound(eps1 * eps2, lambda) - space_lower_bound(eps1, lambda) -
         space_lower_bound(eps2, eps1 * lambda);
}

double exact_chain_space(double lambda) {
  if (!(lambda > kMinChainLambda)) {
    fail(ErrorCode::kDegenerateLambda,
         "lambda <= 1/ln 2: a single exact Bloomier filter is optimal");
  }
  const double k = std::floor(std::log2(lambda));
  return k + 1.0 + lambda / std::exp2(k);
}

TwoStageParams optimal_two_stage_params(const ProblemParams& p) {
  p.validate();
  const double eps = p.epsilon;
  const double lambda = p.lambda;
  const double inf = std::numeric_limits<double>::infinity();

  // Boundaries of each applicability region belong to the degenerate branch.
  const bool a_ok = lambda > kInvLn2 && (eps == 0.0 || lambda < 1.0 / (2.0 * eps * kLn2));
  const bool b_ok = (kLn2 - eps) > 0.0 && lambda > 1.0 / (kLn2 - eps);

  double fa = inf, fb = inf;
  if (a_ok) fa = std::log2(2.0 * kE * lambda * kLn2) - 2.0 * lambda * eps;
  if (b_ok) {
    const double el = eps * lambda;
    fb = std::log2(2.0 * kE * lambda * kLn2 / (el + 1.0)) - el / (el + 1.0);
  }

  TwoStageParams out;
  if (a_ok || b_ok) {
    if (fa <= fb) {
      out.strategy = Strategy::kA;
      out.beta = kInvLn2 - 2.0 * lambda * eps;
      out.space_per_item = fa;
    } else {
      const double el = eps * lambda;
      out.strategy = Strategy::kB;
      out.beta = kInvLn2 - el / (el + 1.0);
      out.space_per_item = fb;
    }
    out.alpha = out.space_per_item - out.beta - 1.0;
    return out;
  }

  // Single-filter fallbacks: pure exact (alpha = 0) under the cheaper of the
  // two fingerprint strategies, or pure approximate (beta = 0).
  double exact = lambda + 1.0;
  if (eps <= 0.5) {
    exact = std::min({exact, (lambda + 1.0) / (eps * lambda + 1.0), lambda + 1.0 - 2.0 * eps * lambda});
  }
  const double approx = eps > 0.0 ? std::log2(1.0 / eps) : inf;
  if (approx <= exact) {
    out.strategy = Strategy::kDegenerateApprox;
    out.alpha = approx;
    out.beta = 0.0;
    out.space_per_item = approx;
  } else {
    out.strategy = Strategy::kDegenerateExact;
    out.alpha = 0.0;
    out.beta = exact - 1.0;
    out.space_per_item = exact;
  }
  return out;
}

AndSplit optimal_and_split(const ProblemParams& p) {
  p.validate();
  if (!(p.lambda > kMinChainLambda)) {
    fail(ErrorCode::kDegenerateLambda, "lambda <= 1/ln 2 has no multi-stage split");
  }
  AndSplit out;
  out.stages = static_cast<int>(std::floor(std::log2(p.lambda))) + 1;
  const double last = std::exp2(out.stages - 1) * p.epsilon;
  if (last > 0.5) {
    fail(ErrorCode::kDomain, "epsilon too large: last stage rate " + std::to_string(last) +
                                 " exceeds 1/2");
  }
  out.rates.assign(static_cast<size_t>(out.stages - 1), 0.5);
  out.rates.push_back(last);
  out.space = out.stages + p.lambda / std::exp2(out.stages - 1) - 2.0 * p.epsilon * p.lambda;
  return out;
}

double andnot_space(double lambda, double delta) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) fail(ErrorCode::kDomain, "lambda must exceed 1");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::kDomain, "delta must lie in (0, 1)");
  return std::log2(lambda) + (1.0 + delta) / (1.0 - delta) * std::log2(1.0 / delta);
}

double andnot_space_practical(double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) fail(ErrorCode::kDomain, "lambda must exceed 1");
  return std::log2(16.0 * lambda);
}

double andnot_space_limit(double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) fail(ErrorCode::kDomain, "lambda must exceed 1");
  return std::log2(4.0 * kE * lambda);
}

double cuckoo_negative_ratio(double r) {
  if (!(r > 0.0 && r < 0.5)) fail(ErrorCode::kDomain, "load factor must lie in (0, 1/2)");
  const double two_r = 2.0 * r;
  return 1.0 / (two_r / (-std::expm1(-two_r)) - 1.0);
}

bool huffman_overhead_check(double avg_len, double entropy_h) {
  if (avg_len < 0.0 || entropy_h < 0.0) fail(ErrorCode::kDomain, "negative length or entropy");
  return entropy_h < avg_len && avg_len < entropy_h + kHuffmanOverheadBound;
}

double dictionary_overhead_factor() { return 4.0 / (5.0 * std::log2(5.0) - 8.0); }

}  // namespace cf::bounds
