// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/chained.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "cf/error.hpp"

namespace cf {

namespace {

constexpr std::string_view kContainerMagic = "CFC1";
constexpr uint16_t kContainerVersion = 1;
constexpr uint64_t kMinLayerBits = 64;

HashSeed stage_seed(HashSeed base, uint64_t stage) noexcept {
  return HashSeed{fmix64(base.value + (stage + 1) * kSeedStep)};
}

RetrievalConfig with_seed(RetrievalConfig c, HashSeed s) noexcept {
  c.seed = s;
  return c;
}

// Largest a with 2^a * n <= negatives, i.e. floor(log2 lambda) without
// rounding error.
unsigned floor_log2_ratio(uint64_t negatives, uint64_t n) noexcept {
  unsigned a = 0;
  while (a < 63 && (static_cast<unsigned __int128>(n) << (a + 1)) <= negatives) ++a;
  return a;
}

double ratio(uint64_t negatives, uint64_t n) noexcept {
  return n == 0 ? 0.0 : static_cast<double>(negatives) / static_cast<double>(n);
}

template <typename T>
std::vector<uint8_t> to_bytes(const T& stage) {
  ByteWriter w;
  stage.write(w);
  return w.take();
}

template <typename T>
T from_blob(ByteReader& r) {
  ByteReader sub(r.blob());
  T out = T::read(sub);
  if (!sub.done()) fail(ErrorCode::kFormat, "trailing bytes in stage blob");
  return out;
}

}  // namespace

std::vector<uint64_t> split_universe(std::span<const uint64_t> universe,
                                     std::span<const uint64_t> positives) {
  std::vector<uint64_t> sorted(positives.begin(), positives.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::kDuplicateKey, "duplicate positive key");
  }
  std::vector<uint64_t> negatives;
  negatives.reserve(universe.size() >= sorted.size() ? universe.size() - sorted.size() : 0);
  uint64_t matched = 0;
  for (uint64_t k : universe) {
    if (std::binary_search(sorted.begin(), sorted.end(), k)) {
      ++matched;
    } else {
      negatives.push_back(k);
    }
  }
  if (matched != sorted.size()) {
    fail(ErrorCode::kInvalidArgument, "positives are not a subset of the universe");
  }
  return negatives;
}

// ---------------------------------------------------------------------------
// ChainedAndFilter

ChainedAndFilter ChainedAndFilter::single_exact(std::span<const uint64_t> positives,
                                                std::span<const uint64_t> negatives,
                                                const AndConfig& config, AndBuildReport* report) {
  ChainedAndFilter f;
  f.stage2_ = ExactBloomier::build(positives, negatives, FingerprintStrategy::kCoinFlip,
                                   with_seed(config.retrieval, stage_seed(config.retrieval.seed, 1)));
  f.strategy_ = bounds::Strategy::kDegenerateExact;
  f.lambda_ = ratio(negatives.size(), positives.size());
  f.positives_ = positives.size();
  f.beta_ = f.lambda_;
  if (report) {
    report->survivors = negatives.size();
    report->encoded_negatives = negatives.size();
    report->degenerate = true;
  }
  return f;
}

ChainedAndFilter ChainedAndFilter::build_exact(std::span<const uint64_t> positives,
                                               std::span<const uint64_t> negatives,
                                               const AndConfig& config, AndBuildReport* report) {
  if (report) {
    *report = {};
    report->positives = positives.size();
    report->negatives = negatives.size();
  }
  const uint64_t n = positives.size();
  const unsigned alpha = n == 0 ? 0 : floor_log2_ratio(negatives.size(), n);
  if (alpha == 0 || !(ratio(negatives.size(), n) > bounds::kMinChainLambda)) {
    return single_exact(positives, negatives, config, report);
  }

  ChainedAndFilter f;
  f.alpha_ = alpha;
  f.lambda_ = ratio(negatives.size(), n);
  f.positives_ = n;
  f.strategy_ = bounds::Strategy::kA;
  const RetrievalConfig& rc = config.retrieval;
  auto s1 = ApproxBloomier::build(positives, alpha, with_seed(rc, stage_seed(rc.seed, 0)));
  std::vector<uint64_t> survivors;
  for (uint64_t k : negatives) {
    if (s1.contains(k)) survivors.push_back(k);
  }
  f.stage2_ = ExactBloomier::build(positives, survivors, FingerprintStrategy::kCoinFlip,
                                   with_seed(rc, stage_seed(rc.seed, 1)));
  f.stage1_ = std::move(s1);
  f.beta_ = ratio(survivors.size(), n);
  if (report) {
    report->survivors = survivors.size();
    report->encoded_negatives = survivors.size();
    report->stage1_attempts = 1;
  }
  return f;
}

ChainedAndFilter ChainedAndFilter::build_general(std::span<const uint64_t> positives,
                                                 std::span<const uint64_t> negatives,
                                                 double epsilon, const AndConfig& config,
                                                 AndBuildReport* report) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail(ErrorCode::kDomain, "epsilon must be in [0, 1]");
  if (epsilon == 0.0 || positives.empty() || negatives.empty()) {
    return build_exact(positives, negatives, config, report);
  }
  if (report) {
    *report = {};
    report->positives = positives.size();
    report->negatives = negatives.size();
  }
  const uint64_t n = positives.size();
  const double lambda = ratio(negatives.size(), n);
  const bounds::TwoStageParams params = bounds::optimal_two_stage_params({epsilon, lambda, n});
  const RetrievalConfig& rc = config.retrieval;

  bool use_b = config.strategy == AndStrategy::kB ||
               (config.strategy == AndStrategy::kAuto && params.strategy == bounds::Strategy::kB &&
                config.enable_strategy_b);
  if (config.strategy == AndStrategy::kAuto && params.strategy == bounds::Strategy::kDegenerateApprox) {
    ChainedAndFilter f;
    f.alpha_ = std::clamp(static_cast<unsigned>(std::ceil(std::log2(1.0 / epsilon) - 1e-12)), 1u, 64u);
    f.stage1_ = ApproxBloomier::build(positives, f.alpha_, with_seed(rc, stage_seed(rc.seed, 0)));
    f.strategy_ = bounds::Strategy::kDegenerateApprox;
    f.lambda_ = lambda;
    f.epsilon_ = epsilon;
    f.positives_ = n;
    if (report) report->degenerate = true;
    return f;
  }
  if (config.strategy == AndStrategy::kAuto && params.strategy == bounds::Strategy::kDegenerateExact) {
    ChainedAndFilter f = single_exact(positives, negatives, config, report);
    f.epsilon_ = epsilon;
    return f;
  }

  unsigned alpha = 0;
  double beta = 0.0;
  const double el = epsilon * lambda;
  if (use_b) {
    if (!(bounds::kLn2 - epsilon > 0.0)) fail(ErrorCode::kDomain, "strategy B needs epsilon < ln 2");
    beta = std::max(0.0, bounds::kInvLn2 - el / (el + 1.0));
    const double space = std::log2(2.0 * bounds::kE * lambda * bounds::kLn2 / (el + 1.0)) - el / (el + 1.0);
    alpha = static_cast<unsigned>(std::clamp(std::lround(space - beta - 1.0), 1L, 64L));
  } else {
    const double a0 = std::log2(std::max(lambda * bounds::kLn2, 1.0));
    double best = std::numeric_limits<double>::infinity();
    for (double a : {std::floor(a0), std::ceil(a0)}) {
      const double aa = std::clamp(a, 1.0, 64.0);
      const double cost = aa + lambda / std::exp2(aa) - 2.0 * el + 1.0;
      if (cost <= best) {
        best = cost;
        alpha = static_cast<unsigned>(aa);
      }
    }
  }

  const uint64_t unencoded_target = static_cast<uint64_t>(std::llround(2.0 * el * static_cast<double>(n)));
  const uint64_t b_target = static_cast<uint64_t>(std::llround(beta * static_cast<double>(n)));
  for (uint32_t attempt = 0; attempt < std::max(1u, config.survivor_retries); ++attempt) {
    auto s1 = ApproxBloomier::build(positives, alpha, with_seed(rc, stage_seed(rc.seed, 2 * attempt)));
    std::vector<uint64_t> survivors;
    for (uint64_t k : negatives) {
      if (s1.contains(k)) survivors.push_back(k);
    }
    uint64_t encode = 0;
    if (use_b) {
      if (survivors.size() < b_target) continue;
      encode = b_target;
    } else {
      if (survivors.size() < unencoded_target) continue;
      encode = survivors.size() - unencoded_target;
    }
    ChainedAndFilter f;
    f.stage2_ = ExactBloomier::build(
        positives, std::span<const uint64_t>(survivors).first(encode),
        use_b ? FingerprintStrategy::kConstant : FingerprintStrategy::kCoinFlip,
        with_seed(rc, stage_seed(rc.seed, 2 * attempt + 1)));
    f.stage1_ = std::move(s1);
    f.strategy_ = use_b ? bounds::Strategy::kB : bounds::Strategy::kA;
    f.alpha_ = alpha;
    f.beta_ = ratio(encode, n);
    f.lambda_ = lambda;
    f.epsilon_ = epsilon;
    f.positives_ = n;
    if (report) {
      report->survivors = survivors.size();
      report->encoded_negatives = encode;
      report->stage1_attempts = attempt + 1;
    }
    return f;
  }
  fail(ErrorCode::kInsufficientSurvivors, "stage 1 left too few false positives for the target rate");
}

ChainedAndFilter ChainedAndFilter::build_dynamic(std::span<const uint64_t> positives,
                                                 std::span<const uint64_t> negatives,
                                                 const DynamicConfig& config,
                                                 AndBuildReport* report) {
  const uint64_t n = positives.size();
  unsigned alpha = config.alpha;
  if (alpha == 0) {
    alpha = negatives.empty() || n == 0 ? config.default_alpha
                                        : std::max(1u, floor_log2_ratio(negatives.size(), n));
  }
  if (alpha < 1 || alpha > 29) fail(ErrorCode::kInvalidArgument, "dynamic alpha must be in [1, 29]");

  ChainedAndFilter f;
  f.alpha_ = alpha;
  f.lambda_ = ratio(negatives.size(), n);
  f.positives_ = n;
  f.strategy_ = bounds::Strategy::kA;
  const HashSeed s1_seed = stage_seed(config.seed, 0);
  switch (config.stage1) {
    case Stage1Kind::kBloom: {
      auto b = BloomFilter::for_items(n, alpha * bounds::kInvLn2, s1_seed);
      for (uint64_t k : positives) b.insert(k);
      f.stage1_ = std::move(b);
      break;
    }
    case Stage1Kind::kCuckoo: {
      const auto cap = static_cast<uint64_t>(std::ceil(static_cast<double>(n) * (1.0 + config.othello_reserve)));
      auto c = CuckooFilter::for_items(cap, alpha + 3, s1_seed);
      for (uint64_t k : positives) c.insert(k);
      f.stage1_ = std::move(c);
      break;
    }
    default:
      fail(ErrorCode::kInvalidArgument, "dynamic stage 1 must be bloom or cuckoo");
  }

  std::vector<uint64_t> survivors;
  for (uint64_t k : negatives) {
    if (f.stage1(k)) survivors.push_back(k);
  }
  const auto cap = static_cast<uint64_t>(
      std::ceil(static_cast<double>(n + survivors.size()) * (1.0 + config.othello_reserve)));
  OthelloTable o(std::max<uint64_t>(cap, 16), stage_seed(config.seed, 1));
  for (uint64_t k : positives) o.insert(k, true);
  for (uint64_t k : survivors) o.insert(k, false);
  f.stage2_ = std::move(o);
  f.beta_ = ratio(survivors.size(), n);
  if (report) {
    *report = {};
    report->positives = n;
    report->negatives = negatives.size();
    report->survivors = survivors.size();
    report->encoded_negatives = survivors.size();
    report->stage1_attempts = 1;
  }
  return f;
}

bool ChainedAndFilter::stage1(uint64_t key) const noexcept {
  switch (stage1_.index()) {
    case 1: return std::get<1>(stage1_).contains(key);
    case 2: return std::get<2>(stage1_).contains(key);
    case 3: return std::get<3>(stage1_).contains(key);
    default: return true;
  }
}

bool ChainedAndFilter::stage2(uint64_t key) const noexcept {
  switch (stage2_.index()) {
    case 1: return std::get<1>(stage2_).contains(key);
    case 2: return std::get<2>(stage2_).query(key);
    default: return true;
  }
}

bool ChainedAndFilter::query(uint64_t key) const noexcept { return stage1(key) && stage2(key); }

bool ChainedAndFilter::query(uint64_t key, QueryStats& stats) const noexcept {
  ++stats.queries;
  if (!stage1(key)) return false;
  ++stats.stage1_passes;
  if (stage2_.index() == 0) return true;
  ++stats.stage2_lookups;
  return stage2(key);
}

bool ChainedAndFilter::exclude_negative(uint64_t key) {
  auto* o = std::get_if<OthelloTable>(&stage2_);
  if (!o) fail(ErrorCode::kInvalidArgument, "exclusion needs a dynamic stage 2");
  if (const bool* l = o->label(key)) {
    if (*l) fail(ErrorCode::kConflictingLabel, "key is a registered positive");
    return false;
  }
  if (!stage1(key)) return false;
  o->insert(key, false);
  return true;
}

void ChainedAndFilter::insert_positive(uint64_t key) {
  auto* o = std::get_if<OthelloTable>(&stage2_);
  if (!o || (stage1_kind() != Stage1Kind::kBloom && stage1_kind() != Stage1Kind::kCuckoo)) {
    fail(ErrorCode::kInvalidArgument, "insertion needs dynamic stages");
  }
  if (const bool* l = o->label(key)) {
    if (!*l) fail(ErrorCode::kConflictingLabel, "key is a registered negative");
    return;
  }
  if (auto* b = std::get_if<BloomFilter>(&stage1_)) {
    b->insert(key);
  } else {
    std::get<CuckooFilter>(stage1_).insert(key);
  }
  o->insert(key, true);
  ++positives_;
}

uint64_t ChainedAndFilter::stage1_bits() const noexcept {
  switch (stage1_.index()) {
    case 1: return std::get<1>(stage1_).size_bits();
    case 2: return std::get<2>(stage1_).size_bits();
    case 3: return std::get<3>(stage1_).size_bits();
    default: return 0;
  }
}

uint64_t ChainedAndFilter::stage2_bits() const noexcept {
  switch (stage2_.index()) {
    case 1: return std::get<1>(stage2_).size_bits();
    case 2: return std::get<2>(stage2_).size_bits();
    default: return 0;
  }
}

double ChainedAndFilter::bits_per_positive() const noexcept {
  return positives_ == 0 ? 0.0 : static_cast<double>(size_bits()) / static_cast<double>(positives_);
}

void ChainedAndFilter::write(ByteWriter& w) const {
  w.u8(static_cast<uint8_t>(strategy_));
  w.u8(static_cast<uint8_t>(stage1_kind()));
  w.u8(static_cast<uint8_t>(stage2_kind()));
  w.u8(0);
  w.u32(alpha_);
  w.f64(beta_);
  w.f64(lambda_);
  w.f64(epsilon_);
  w.u64(positives_);
  std::visit(
      [&](const auto& s) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) w.blob(to_bytes(s));
      },
      stage1_);
  std::visit(
      [&](const auto& s) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) w.blob(to_bytes(s));
      },
      stage2_);
}

ChainedAndFilter ChainedAndFilter::read_body(ByteReader& r, uint32_t layer_count) {
  ChainedAndFilter f;
  const uint8_t strategy = r.u8();
  const uint8_t k1 = r.u8();
  const uint8_t k2 = r.u8();
  r.u8();
  if (strategy > 3 || k1 > 3 || k2 > 2) fail(ErrorCode::kFormat, "unknown stage kind in CFC1");
  if (layer_count != (k1 != 0 ? 1u : 0u) + (k2 != 0 ? 1u : 0u)) {
    fail(ErrorCode::kFormat, "CFC1 layer count does not match stage kinds");
  }
  f.strategy_ = static_cast<bounds::Strategy>(strategy);
  f.alpha_ = r.u32();
  f.beta_ = r.f64();
  f.lambda_ = r.f64();
  f.epsilon_ = r.f64();
  f.positives_ = r.u64();
  switch (static_cast<Stage1Kind>(k1)) {
    case Stage1Kind::kApproxBloomier: f.stage1_ = from_blob<ApproxBloomier>(r); break;
    case Stage1Kind::kBloom: f.stage1_ = from_blob<BloomFilter>(r); break;
    case Stage1Kind::kCuckoo: f.stage1_ = from_blob<CuckooFilter>(r); break;
    case Stage1Kind::kNone: break;
  }
  switch (static_cast<Stage2Kind>(k2)) {
    case Stage2Kind::kExactBloomier: f.stage2_ = from_blob<ExactBloomier>(r); break;
    case Stage2Kind::kOthello: f.stage2_ = from_blob<OthelloTable>(r); break;
    case Stage2Kind::kNone: break;
  }
  return f;
}

// ---------------------------------------------------------------------------
// ChainedAndNotFilter

ChainedAndNotFilter ChainedAndNotFilter::build_exact(std::span<const uint64_t> positives,
                                                     std::span<const uint64_t> negatives,
                                                     const AndNotConfig& config,
                                                     AndNotBuildReport* report) {
  const double delta = config.delta;
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::kDomain, "delta must be in (0, 1)");
  const uint64_t n = positives.size();
  const double lambda = ratio(negatives.size(), n);
  const unsigned k1 = static_cast<unsigned>(
      std::clamp(std::ceil(std::log2(std::max(lambda, 1e-300) / delta) - 1e-9), 1.0, 32.0));
  const unsigned k_rest = static_cast<unsigned>(
      std::clamp(std::ceil(2.0 * std::log2(1.0 / delta) - 1e-9), 1.0, 32.0));
  const double nd = static_cast<double>(std::max<uint64_t>(n, 2));
  const double threshold = config.terminal_fraction * nd / std::log2(nd);
  const auto limit = static_cast<size_t>(std::max(8.0, std::ceil(4.0 * std::log2(nd))));

  ChainedAndNotFilter f;
  f.delta_ = delta;
  f.lambda_ = lambda;
  f.positives_ = n;
  if (report) *report = {};

  std::vector<uint64_t> a(positives.begin(), positives.end());
  std::vector<uint64_t> b(negatives.begin(), negatives.end());
  for (uint32_t i = 0;; ++i) {
    if (f.layers_.size() >= limit) fail(ErrorCode::kNonConvergence, "layer count exceeds 4 log2 n");
    const unsigned k = i == 0 ? k1 : k_rest;
    const auto bits = std::max<uint64_t>(
        kMinLayerBits, static_cast<uint64_t>(std::ceil(k * static_cast<double>(a.size()) * bounds::kInvLn2)));
    BloomFilter layer(bits, k, stage_seed(config.seed, i));
    for (uint64_t key : a) layer.insert(key);
    std::vector<uint64_t> next;
    for (uint64_t key : b) {
      if (layer.contains(key)) next.push_back(key);
    }
    if (report) {
      report->layer_keys.push_back(a.size());
      report->layer_bits.push_back(layer.size_bits());
    }
    f.layers_.push_back(std::move(layer));
    if (next.empty()) break;
    if (config.use_terminal_exact && static_cast<double>(next.size()) <= threshold) {
      f.terminal_ = ExactBloomier::build(
          next, a, FingerprintStrategy::kCoinFlip,
          with_seed(config.retrieval, stage_seed(config.seed, 1000 + i)));
      if (report) report->terminal_keys = next.size() + a.size();
      break;
    }
    b = std::move(a);
    a = std::move(next);
  }
  return f;
}

ChainedAndNotFilter ChainedAndNotFilter::make_trainable(uint64_t n, double lambda, double delta,
                                                        uint32_t bloom_layers, bool terminal_othello,
                                                        HashSeed seed, double slack) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::kDomain, "delta must be in (0, 1)");
  if (!(lambda > 0.0) || !(slack > 0.0)) fail(ErrorCode::kDomain, "lambda and slack must be positive");
  const double n_eff = static_cast<double>(std::max<uint64_t>(n, 1)) * slack;
  const uint32_t layers = bloom_layers != 0
                              ? bloom_layers
                              : static_cast<uint32_t>(std::ceil(std::log2(std::max(n_eff, 2.0)))) + 2;
  const unsigned k1 = static_cast<unsigned>(std::clamp(std::ceil(std::log2(lambda / delta) - 1e-9), 1.0, 32.0));
  const double log_inv = std::log2(1.0 / delta);
  const unsigned k_rest = static_cast<unsigned>(std::clamp(std::ceil(2.0 * log_inv - 1e-9), 1.0, 32.0));

  ChainedAndNotFilter f;
  f.delta_ = delta;
  f.lambda_ = lambda;
  f.positives_ = n;
  for (uint32_t i = 0; i < layers; ++i) {
    const double per_item = i == 0 ? k1 : 2.0 * std::pow(delta, i) * log_inv;
    const auto bits = std::max<uint64_t>(
        kMinLayerBits, static_cast<uint64_t>(std::ceil(bounds::kInvLn2 * per_item * n_eff)));
    f.layers_.emplace_back(bits, i == 0 ? k1 : k_rest, stage_seed(seed, i));
  }
  if (terminal_othello) {
    const auto cap = static_cast<uint64_t>(std::ceil(2.0 * std::pow(delta, layers - 1) * n_eff));
    f.terminal_ = OthelloTable(std::max<uint64_t>(cap, 64), stage_seed(seed, 1000));
  }
  return f;
}

bool ChainedAndNotFilter::layer_accepts(uint32_t i, uint64_t key) const noexcept {
  if (i < layers_.size()) return layers_[i].contains(key);
  switch (terminal_.index()) {
    case 1: return std::get<1>(terminal_).contains(key);
    case 2: return std::get<2>(terminal_).query(key);
    default: return false;
  }
}

uint32_t ChainedAndNotFilter::depth(uint64_t key) const noexcept {
  const auto bloom = static_cast<uint32_t>(layers_.size());
  uint32_t d = 0;
  while (d < bloom && layers_[d].contains(key)) ++d;
  if (d == bloom && has_terminal() && layer_accepts(bloom, key)) ++d;
  return d;
}

bool ChainedAndNotFilter::query(uint64_t key, QueryStats& stats) const noexcept {
  ++stats.queries;
  const uint32_t d = depth(key);
  stats.layer_probes += std::min(d + 1, total_layers());
  if (d > 0) ++stats.stage1_passes;
  if (d > 1 || (d == 1 && total_layers() > 1)) ++stats.stage2_lookups;
  return (d & 1) != 0;
}

bool ChainedAndNotFilter::train(uint64_t key, bool label) {
  const bool was_wrong = query(key) != label;
  const auto bloom = static_cast<uint32_t>(layers_.size());
  for (;;) {
    uint32_t d = 0;
    while (d < bloom && layers_[d].contains(key)) ++d;
    if (d == bloom && terminal_.index() == 2) {
      // Keys reaching the terminal are registered even when currently
      // right, so later recoloring cannot flip them.
      auto& o = std::get<OthelloTable>(terminal_);
      const bool bit = label != ((bloom & 1) != 0);
      if (const bool* l = o.label(key)) {
        if (*l != bit) fail(ErrorCode::kConflictingLabel, "key trained with both labels");
      } else {
        o.insert(key, bit);
      }
      return was_wrong;
    }
    if (((d & 1) != 0) == label) return was_wrong;
    if (d == bloom) fail(ErrorCode::kCapacityExceeded, "training ran past the last layer");
    layers_[d].force_bits(key);
  }
}

uint64_t ChainedAndNotFilter::size_bits() const noexcept {
  uint64_t total = 0;
  for (const auto& l : layers_) total += l.size_bits();
  switch (terminal_.index()) {
    case 1: total += std::get<1>(terminal_).size_bits(); break;
    case 2: total += std::get<2>(terminal_).size_bits(); break;
    default: break;
  }
  return total;
}

double ChainedAndNotFilter::bits_per_positive() const noexcept {
  return positives_ == 0 ? 0.0 : static_cast<double>(size_bits()) / static_cast<double>(positives_);
}

void ChainedAndNotFilter::write(ByteWriter& w) const {
  w.f64(delta_);
  w.f64(lambda_);
  w.u64(positives_);
  w.u8(static_cast<uint8_t>(terminal_.index()));
  w.u8(0);
  w.u16(0);
  for (const auto& l : layers_) w.blob(to_bytes(l));
  switch (terminal_.index()) {
    case 1: w.blob(to_bytes(std::get<1>(terminal_))); break;
    case 2: w.blob(to_bytes(std::get<2>(terminal_))); break;
    default: break;
  }
}

ChainedAndNotFilter ChainedAndNotFilter::read_body(ByteReader& r, uint32_t layer_count) {
  ChainedAndNotFilter f;
  f.delta_ = r.f64();
  f.lambda_ = r.f64();
  f.positives_ = r.u64();
  const uint8_t terminal = r.u8();
  r.u8();
  r.u16();
  if (terminal > 2) fail(ErrorCode::kFormat, "unknown terminal kind in CFC1");
  const uint32_t bloom = layer_count - (terminal != 0 ? 1 : 0);
  if (layer_count == 0 || bloom == 0) fail(ErrorCode::kFormat, "CFC1 and-not filter without layers");
  for (uint32_t i = 0; i < bloom; ++i) f.layers_.push_back(from_blob<BloomFilter>(r));
  if (terminal == 1) f.terminal_ = from_blob<ExactBloomier>(r);
  if (terminal == 2) f.terminal_ = from_blob<OthelloTable>(r);
  return f;
}

bool evaluate_andnot_recursive(const ChainedAndNotFilter& f, uint64_t key) {
  struct Eval {
    const ChainedAndNotFilter& f;
    uint64_t key;
    bool at(uint32_t i) const {
      if (i >= f.total_layers()) return false;
      return f.layer_accepts(i, key) && !at(i + 1);
    }
  };
  return Eval{f, key}.at(0);
}

// ---------------------------------------------------------------------------
// Container

void write_container(ByteWriter& w, const ChainedFilter& f) {
  w.magic(kContainerMagic);
  w.u16(kContainerVersion);
  if (const auto* a = std::get_if<ChainedAndFilter>(&f)) {
    w.u8(static_cast<uint8_t>(Combinator::kAnd));
    w.u8(0);
    w.u32((a->stage1_kind() != Stage1Kind::kNone ? 1u : 0u) +
          (a->stage2_kind() != Stage2Kind::kNone ? 1u : 0u));
    a->write(w);
  } else {
    const auto& b = std::get<ChainedAndNotFilter>(f);
    w.u8(static_cast<uint8_t>(Combinator::kAndNot));
    w.u8(0);
    w.u32(b.total_layers());
    b.write(w);
  }
}

ChainedFilter read_container(ByteReader& r) {
  r.expect_magic(kContainerMagic);
  if (r.u16() != kContainerVersion) fail(ErrorCode::kFormat, "unsupported CFC1 version");
  const uint8_t combinator = r.u8();
  r.u8();
  const uint32_t layers = r.u32();
  if (combinator == static_cast<uint8_t>(Combinator::kAnd)) return ChainedAndFilter::read_body(r, layers);
  if (combinator == static_cast<uint8_t>(Combinator::kAndNot)) return ChainedAndNotFilter::read_body(r, layers);
  fail(ErrorCode::kFormat, "unknown combinator in CFC1");
}

std::vector<uint8_t> serialize(const ChainedFilter& f) {
  ByteWriter w;
  write_container(w, f);
  return w.take();
}

ChainedFilter deserialize(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  ChainedFilter f = read_container(r);
  if (!r.done()) fail(ErrorCode::kFormat, "trailing bytes after CFC1 container");
  return f;
}

bool query(const ChainedFilter& f, uint64_t key) noexcept {
  return std::visit([&](const auto& x) { return x.query(key); }, f);
}

}  // namespace cf
