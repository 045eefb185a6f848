// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "chainedfilter/chainedfilter.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <span>
#include <string>

#include "cf/bench.hpp"
#include "cf/bounds.hpp"
#include "cf/chained.hpp"
#include "cf/cuckoo_table.hpp"
#include "cf/error.hpp"
#include "cf/huffman.hpp"
#include "cf/lsm.hpp"

struct cf_filter {
  cf::ChainedFilter filter;
};

struct cf_text {
  cf::RandomAccessText text;
};

namespace {

thread_local std::string g_last_error;

cf_status set_error(cf_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
cf_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return CF_OK;
  } catch (const cf::Error& e) {
    return set_error(static_cast<cf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CF_ERR_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CF_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CF_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) cf::fail(cf::ErrorCode::kInvalidArgument, what);
}

template <typename T>
std::span<const T> view(const T* p, size_t n) {
  require(p != nullptr || n == 0, "null array with nonzero length");
  return {p, n};
}

cf::ChainedFilter build_filter(std::span<const uint64_t> pos, std::span<const uint64_t> neg,
                               const cf_build_options& o) {
  const cf::HashSeed seed{o.seed};
  if (o.combinator == CF_AND) {
    cf::AndConfig cfg;
    cfg.retrieval.seed = seed;
    if (o.epsilon == 0.0) return cf::ChainedAndFilter::build_exact(pos, neg, cfg);
    return cf::ChainedAndFilter::build_general(pos, neg, o.epsilon, cfg);
  }
  require(o.combinator == CF_ANDNOT, "unknown combinator");
  require(o.epsilon == 0.0, "the and-not combinator is exact; epsilon must be 0");
  cf::AndNotConfig cfg;
  cfg.delta = o.delta;
  cfg.seed = seed;
  cfg.retrieval.seed = seed;
  return cf::ChainedAndNotFilter::build_exact(pos, neg, cfg);
}

uint8_t* copy_out(const std::vector<uint8_t>& bytes, size_t* size) {
  auto* buf = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
  if (!buf) throw std::bad_alloc();
  if (!bytes.empty()) std::memcpy(buf, bytes.data(), bytes.size());
  *size = bytes.size();
  return buf;
}

}  // namespace

extern "C" {

const char* cf_version(void) { return "1.0.0"; }

const char* cf_status_name(cf_status status) {
  switch (status) {
    case CF_OK: return "Ok";
    case CF_ERR_NO_MEMORY: return "NoMemory";
    case CF_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= CF_ERR_INVALID_ARGUMENT && status <= CF_ERR_VERIFICATION_FAILED) {
    return cf::to_string(static_cast<cf::ErrorCode>(status));
  }
  return "Unknown";
}

const char* cf_last_error(void) { return g_last_error.c_str(); }

void cf_buffer_free(uint8_t* buffer) { std::free(buffer); }

cf_status cf_bounds(double epsilon, double lambda, cf_bounds_report* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    cf_bounds_report r{};
    r.lower_bound = cf::bounds::space_lower_bound(epsilon, lambda);
    const auto tp = cf::bounds::optimal_two_stage_params({epsilon, lambda, std::nullopt});
    r.strategy = static_cast<int>(tp.strategy);
    r.alpha = tp.alpha;
    r.beta = tp.beta;
    r.two_stage_space = tp.space_per_item;
    r.degenerate = lambda <= cf::bounds::kMinChainLambda;
    // epsilon = 1 accepts everything, so no structure is needed at all.
    if (!r.degenerate && epsilon < 1.0) {
      r.exact_chain = cf::bounds::exact_chain_space(lambda);
      const double lb0 = cf::bounds::space_lower_bound(0.0, lambda);
      r.ratio = lb0 > 0.0 ? r.exact_chain / lb0 : 0.0;
      r.andnot_half = cf::bounds::andnot_space(lambda, 0.5);
      r.andnot_limit = cf::bounds::andnot_space_limit(lambda);
    }
    *out = r;
  });
}

void cf_build_options_init(cf_build_options* options) {
  if (!options) return;
  options->combinator = CF_AND;
  options->epsilon = 0.0;
  options->delta = 0.5;
  options->seed = CF_DEFAULT_SEED;
}

cf_status cf_filter_build(const uint64_t* positives, size_t positive_count, const uint64_t* negatives,
                          size_t negative_count, const cf_build_options* options, cf_filter** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    cf_build_options o;
    cf_build_options_init(&o);
    if (options) o = *options;
    auto f = build_filter(view(positives, positive_count), view(negatives, negative_count), o);
    *out = new cf_filter{std::move(f)};
  });
}

cf_status cf_filter_build_universe(const uint64_t* universe, size_t universe_count,
                                   const uint64_t* positives, size_t positive_count,
                                   const cf_build_options* options, cf_filter** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto pos = view(positives, positive_count);
    const auto neg = cf::split_universe(view(universe, universe_count), pos);
    cf_build_options o;
    cf_build_options_init(&o);
    if (options) o = *options;
    auto f = build_filter(pos, neg, o);
    *out = new cf_filter{std::move(f)};
  });
}

void cf_filter_free(cf_filter* filter) { delete filter; }

int cf_filter_query(const cf_filter* filter, uint64_t key) {
  return filter && cf::query(filter->filter, key) ? 1 : 0;
}

cf_status cf_filter_query_batch(const cf_filter* filter, const uint64_t* keys, size_t count,
                                uint8_t* results) {
  return guarded([&] {
    require(filter != nullptr, "null filter");
    require(results != nullptr || count == 0, "null results");
    const auto k = view(keys, count);
    for (size_t i = 0; i < count; ++i) results[i] = cf::query(filter->filter, k[i]) ? 1 : 0;
  });
}

cf_status cf_filter_info_get(const cf_filter* filter, cf_filter_info* out) {
  return guarded([&] {
    require(filter != nullptr && out != nullptr, "null argument");
    cf_filter_info info{};
    if (const auto* a = std::get_if<cf::ChainedAndFilter>(&filter->filter)) {
      info.combinator = CF_AND;
      info.positives = a->positives();
      info.lambda = a->lambda();
      info.epsilon = a->epsilon();
      info.size_bits = a->size_bits();
      info.bits_per_positive = a->bits_per_positive();
      info.alpha = a->alpha();
      info.strategy = static_cast<int>(a->strategy());
      info.layers = 2;
    } else {
      const auto& n = std::get<cf::ChainedAndNotFilter>(filter->filter);
      info.combinator = CF_ANDNOT;
      info.positives = n.positives();
      info.lambda = n.lambda();
      info.size_bits = n.size_bits();
      info.bits_per_positive = n.bits_per_positive();
      info.layers = n.total_layers();
    }
    *out = info;
  });
}

cf_status cf_filter_serialize(const cf_filter* filter, uint8_t** data, size_t* size) {
  return guarded([&] {
    require(filter != nullptr && data != nullptr && size != nullptr, "null argument");
    *data = copy_out(cf::serialize(filter->filter), size);
  });
}

cf_status cf_filter_deserialize(const uint8_t* data, size_t size, cf_filter** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new cf_filter{cf::deserialize(view(data, size))};
  });
}

cf_status cf_huffman_stats_get(const uint32_t* symbols, size_t count, cf_huffman_stats* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto counts = cf::symbol_counts(view(symbols, count));
    const auto book = cf::HuffmanCodebook::build(counts);
    cf_huffman_stats s{};
    s.length = count;
    s.alphabet = static_cast<uint32_t>(book.size());
    s.max_code_length = book.max_length();
    s.entropy = cf::entropy_of(counts);
    s.average_length = book.average_length(counts);
    *out = s;
  });
}

cf_status cf_text_encode(const uint32_t* symbols, size_t count, uint64_t seed, cf_text** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    cf::TextConfig cfg;
    cfg.filter.retrieval.seed = cf::HashSeed{seed};
    *out = new cf_text{cf::RandomAccessText::encode(view(symbols, count), cfg)};
  });
}

void cf_text_free(cf_text* text) { delete text; }

cf_status cf_text_decode_at(const cf_text* text, uint64_t position, uint32_t* symbol) {
  return guarded([&] {
    require(text != nullptr && symbol != nullptr, "null argument");
    *symbol = text->text.decode_at(position);
  });
}

cf_status cf_text_decode_all(const cf_text* text, uint32_t* out, size_t capacity) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    require(capacity >= text->text.length(), "output buffer too small");
    const auto all = text->text.decode_all();
    std::copy(all.begin(), all.end(), out);
  });
}

cf_status cf_text_info_get(const cf_text* text, cf_text_info* out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    const auto& t = text->text;
    cf_text_info info{};
    info.length = t.length();
    info.alphabet = static_cast<uint32_t>(t.codebook().size());
    info.code_bits = t.code_bits();
    info.filter_bits = t.filter().size_bits();
    info.bits_per_symbol = t.bits_per_symbol();
    info.flipped = t.flipped() ? 1 : 0;
    *out = info;
  });
}

cf_status cf_text_codebook_entry(const cf_text* text, uint32_t index, uint32_t* symbol, char* code) {
  return guarded([&] {
    require(text != nullptr && symbol != nullptr && code != nullptr, "null argument");
    const auto& entries = text->text.codebook().entries();
    require(index < entries.size(), "codebook index out of range");
    *symbol = entries[index].symbol;
    std::memcpy(code, entries[index].code.c_str(), entries[index].code.size() + 1);
  });
}

cf_status cf_text_serialize(const cf_text* text, uint8_t** data, size_t* size) {
  return guarded([&] {
    require(text != nullptr && data != nullptr && size != nullptr, "null argument");
    cf::ByteWriter w;
    text->text.write(w);
    *data = copy_out(w.take(), size);
  });
}

cf_status cf_text_deserialize(const uint8_t* data, size_t size, cf_text** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    cf::ByteReader r(view(data, size));
    auto t = cf::RandomAccessText::read(r);
    if (r.remaining() != 0) cf::fail(cf::ErrorCode::kFormat, "trailing bytes after CFH1 text");
    *out = new cf_text{std::move(t)};
  });
}

cf_status cf_cuckoo_sim(uint64_t m, double r, int terminal_othello, uint32_t max_rounds, uint64_t seed,
                        cf_cuckoo_report* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(max_rounds <= CF_MAX_TRAIN_ROUNDS, "too many training rounds");
    const auto sim = cf::simulate_cuckoo(m, r, terminal_othello != 0, max_rounds, seed);
    cf_cuckoo_report rep{};
    rep.stored = sim.stored;
    rep.in_t1 = sim.in_t1;
    rep.in_t2 = sim.in_t2;
    rep.rebuilds = sim.rebuilds;
    rep.lambda_measured = sim.lambda_measured;
    rep.lambda_theory = sim.lambda_theory;
    rep.predictor_bits = sim.predictor_bits;
    rep.rounds = static_cast<uint32_t>(sim.error_rates.size());
    rep.converged = sim.converged ? 1 : 0;
    for (size_t i = 0; i < sim.error_rates.size(); ++i) rep.error_rate[i] = sim.error_rates[i];
    rep.mean_probes = sim.mean_probes;
    rep.baseline_probes = sim.baseline_probes;
    *out = rep;
  });
}

cf_status cf_lsm_sim(uint32_t runs, uint64_t keys_per_run, uint64_t queries, uint64_t seed,
                     cf_lsm_report* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto sim = cf::simulate_lsm(runs, keys_per_run, queries, seed);
    cf_lsm_report rep{};
    rep.runs = sim.runs;
    rep.keys = sim.keys;
    rep.filter_bits = sim.filter_bits;
    rep.queries = sim.queries;
    rep.max_extra_reads = sim.max_extra_reads;
    rep.mean_extra_reads = queries ? static_cast<double>(sim.extra_reads) / static_cast<double>(queries) : 0.0;
    rep.oracle_mismatches = sim.oracle_mismatches;
    rep.false_negatives = sim.false_negatives;
    *out = rep;
  });
}

cf_status cf_bench_run(const char* suite, double scale, const uint64_t* seeds, size_t seed_count,
                       const char* path) {
  return guarded([&] {
    require(suite != nullptr && path != nullptr, "null argument");
    require(cf::is_bench_suite(suite), "unknown bench suite");
    cf::BenchOptions opts;
    opts.scale = scale;
    if (seed_count > 0) {
      const auto s = view(seeds, seed_count);
      opts.seeds.assign(s.begin(), s.end());
    }
    const auto records = cf::run_bench(suite, opts);
    const std::string p = path;
    if (p == "-") {
      cf::write_bench_header(std::cout);
      for (const auto& r : records) cf::write_bench_row(std::cout, r);
      std::cout.flush();
      return;
    }
    bool fresh = true;
    {
      std::ifstream probe(p, std::ios::binary | std::ios::ate);
      fresh = !probe || probe.tellg() <= 0;
    }
    std::ofstream f(p, std::ios::app);
    if (!f) cf::fail(cf::ErrorCode::kIo, "cannot open " + p);
    if (fresh) cf::write_bench_header(f);
    for (const auto& r : records) cf::write_bench_row(f, r);
    if (!f) cf::fail(cf::ErrorCode::kIo, "write failed for " + p);
  });
}

}  // extern "C"
