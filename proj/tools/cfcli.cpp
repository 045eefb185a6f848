// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// cfcli: command-line front end over the chainedfilter C API.

#include <chainedfilter/chainedfilter.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitVerification = 4;

// Library failure carrying the process exit code.
struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void raise(int code, const std::string& message) { throw Failure{code, message}; }

void check(cf_status s, const char* context) {
  if (s == CF_OK) return;
  const int code = (s == CF_ERR_INVALID_ARGUMENT || s == CF_ERR_DOMAIN) ? kExitUsage
                   : s == CF_ERR_VERIFICATION_FAILED                     ? kExitVerification
                                                                         : kExitConstruction;
  raise(code, std::string(context) + ": " + cf_status_name(s) + ": " + cf_last_error());
}

struct FilterDeleter {
  void operator()(cf_filter* f) const { cf_filter_free(f); }
};
struct TextDeleter {
  void operator()(cf_text* t) const { cf_text_free(t); }
};
struct BufferDeleter {
  void operator()(uint8_t* b) const { cf_buffer_free(b); }
};
using FilterPtr = std::unique_ptr<cf_filter, FilterDeleter>;
using TextPtr = std::unique_ptr<cf_text, TextDeleter>;
using BufferPtr = std::unique_ptr<uint8_t, BufferDeleter>;

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(kExitConstruction, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const uint8_t* data, size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(kExitConstruction, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) raise(kExitConstruction, "write failed for " + path);
}

// Keys are little-endian uint64 arrays, or newline-separated hex with hex.
std::vector<uint64_t> read_keys(const std::string& path, bool hex) {
  const auto bytes = read_file(path);
  std::vector<uint64_t> keys;
  if (hex) {
    std::istringstream in(std::string(bytes.begin(), bytes.end()));
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                 line.end());
      if (line.empty()) continue;
      size_t used = 0;
      uint64_t v = 0;
      try {
        v = std::stoull(line, &used, 16);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != line.size()) raise(kExitUsage, path + ":" + std::to_string(line_no) + ": not a hex key");
      keys.push_back(v);
    }
    return keys;
  }
  if (bytes.size() % 8 != 0) raise(kExitUsage, path + ": size is not a multiple of 8 bytes");
  keys.resize(bytes.size() / 8);
  for (size_t i = 0; i < keys.size(); ++i) {
    uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[i * 8 + static_cast<size_t>(b)];
    keys[i] = v;
  }
  return keys;
}

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t parse_seed(const std::string& text) {
  size_t used = 0;
  uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) raise(kExitUsage, "invalid seed '" + text + "'");
  return v;
}

// --seed beats CF_SEED, which beats the built-in default.
uint64_t resolve_seed(const std::string& flag) {
  if (!flag.empty()) return parse_seed(flag);
  if (const char* env = std::getenv("CF_SEED"); env && *env) return parse_seed(env);
  return CF_DEFAULT_SEED;
}

std::string hex64(uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%" PRIX64, v);
  return buf;
}

void emit(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) {
    std::cout << k << ": ";
    if (v.is_string()) {
      std::cout << v.get<std::string>();
    } else {
      std::cout << v.dump();
    }
    std::cout << '\n';
  }
}

const char* strategy_name(int s) {
  switch (s) {
    case 0: return "A";
    case 1: return "B";
    case 2: return "degenerate-approx";
    case 3: return "degenerate-exact";
    default: return "unknown";
  }
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  double epsilon = 0.0;
  double lambda = 16.0;
  bool json = false;
};

int run_bounds(const BoundsArgs& a) {
  cf_bounds_report r;
  check(cf_bounds(a.epsilon, a.lambda, &r), "bounds");
  json j;
  j["epsilon"] = a.epsilon;
  j["lambda"] = a.lambda;
  j["lower_bound"] = r.lower_bound;
  if (r.degenerate) {
    j["notice"] = "degenerate lambda (<= 1/ln 2): a single exact Bloomier filter is optimal";
  } else {
    j["exact_chain"] = r.exact_chain;
    j["ratio"] = r.ratio;
  }
  j["strategy"] = strategy_name(r.strategy);
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["two_stage_space"] = r.two_stage_space;
  if (!r.degenerate) {
    j["andnot_space_half"] = r.andnot_half;
    j["andnot_space_limit"] = r.andnot_limit;
  }
  if (a.json) {
    emit(j, true);
    return kExitOk;
  }
  std::printf("epsilon           %.6g\n", a.epsilon);
  std::printf("lambda            %.6g\n", a.lambda);
  std::printf("lower_bound       %.4f\n", r.lower_bound);
  if (r.degenerate) {
    std::printf("notice            degenerate lambda (<= 1/ln 2): a single exact Bloomier filter is optimal\n");
  } else {
    std::printf("exact_chain       %.4f\n", r.exact_chain);
    std::printf("ratio             %.4f\n", r.ratio);
  }
  std::printf("strategy          %s\n", strategy_name(r.strategy));
  std::printf("alpha             %.4f\n", r.alpha);
  std::printf("beta              %.4f\n", r.beta);
  std::printf("two_stage_space   %.4f\n", r.two_stage_space);
  if (!r.degenerate) {
    std::printf("andnot_space_half %.4f\n", r.andnot_half);
    std::printf("andnot_limit      %.4f\n", r.andnot_limit);
  }
  return kExitOk;
}

struct BuildArgs {
  std::string positives, universe, out, combinator = "and", seed;
  double lambda = 0.0, epsilon = 0.0, delta = 0.5;
  bool hex = false, verify = false, json = false;
};

int run_build(const BuildArgs& a) {
  const uint64_t seed = resolve_seed(a.seed);
  const auto pos = read_keys(a.positives, a.hex);
  cf_build_options opts;
  cf_build_options_init(&opts);
  opts.combinator = a.combinator == "andnot" ? CF_ANDNOT : CF_AND;
  opts.epsilon = a.epsilon;
  opts.delta = a.delta;
  opts.seed = seed;

  std::vector<uint64_t> neg;
  cf_filter* raw = nullptr;
  if (!a.universe.empty()) {
    const auto uni = read_keys(a.universe, a.hex);
    check(cf_filter_build_universe(uni.data(), uni.size(), pos.data(), pos.size(), &opts, &raw), "build");
    const std::unordered_set<uint64_t> ps(pos.begin(), pos.end());
    for (uint64_t k : uni) {
      if (!ps.count(k)) neg.push_back(k);
    }
  } else {
    if (!(a.lambda > 0.0)) raise(kExitUsage, "build needs --universe or a positive --lambda");
    const std::unordered_set<uint64_t> ps(pos.begin(), pos.end());
    const auto want = static_cast<size_t>(a.lambda * static_cast<double>(pos.size()) + 0.5);
    std::unordered_set<uint64_t> seen;
    uint64_t state = seed;
    while (neg.size() < want) {
      const uint64_t k = splitmix64(state);
      if (!ps.count(k) && seen.insert(k).second) neg.push_back(k);
    }
    check(cf_filter_build(pos.data(), pos.size(), neg.data(), neg.size(), &opts, &raw), "build");
  }
  FilterPtr f(raw);

  uint8_t* data = nullptr;
  size_t size = 0;
  check(cf_filter_serialize(f.get(), &data, &size), "serialize");
  BufferPtr buf(data);
  write_file(a.out, data, size);

  cf_filter_info info;
  check(cf_filter_info_get(f.get(), &info), "info");
  json j;
  j["combinator"] = info.combinator == CF_AND ? "and" : "andnot";
  j["positives"] = info.positives;
  j["negatives"] = neg.size();
  j["lambda"] = info.lambda;
  j["epsilon"] = a.epsilon;
  j["size_bits"] = info.size_bits;
  j["bits_per_item"] = info.bits_per_positive;
  j["file_bytes"] = size;
  j["layers"] = info.layers;
  if (info.combinator == CF_AND) {
    j["alpha"] = info.alpha;
    j["strategy"] = strategy_name(info.strategy);
  }
  j["seed"] = hex64(seed);
  j["out"] = a.out;

  int rc = kExitOk;
  if (a.verify) {
    uint64_t fn = 0, fp = 0;
    std::vector<uint8_t> res(std::max(pos.size(), neg.size()));
    check(cf_filter_query_batch(f.get(), pos.data(), pos.size(), res.data()), "verify");
    for (size_t i = 0; i < pos.size(); ++i) fn += res[i] == 0;
    check(cf_filter_query_batch(f.get(), neg.data(), neg.size(), res.data()), "verify");
    for (size_t i = 0; i < neg.size(); ++i) fp += res[i] != 0;
    j["false_negatives"] = fn;
    j["false_positives"] = fp;
    const bool exact = a.epsilon == 0.0;
    if (fn != 0 || (exact && fp != 0)) rc = kExitVerification;
    j["verified"] = rc == kExitOk;
  }
  emit(j, a.json);
  return rc;
}

struct QueryArgs {
  std::string filter, keys;
  bool hex = false, summary = false;
  int expect = -1;
};

int run_query(const QueryArgs& a) {
  const auto bytes = read_file(a.filter);
  cf_filter* raw = nullptr;
  check(cf_filter_deserialize(bytes.data(), bytes.size(), &raw), "load filter");
  FilterPtr f(raw);
  const auto keys = read_keys(a.keys, a.hex);
  std::vector<uint8_t> res(keys.size());
  check(cf_filter_query_batch(f.get(), keys.data(), keys.size(), res.data()), "query");
  uint64_t positive = 0, mismatched = 0;
  for (size_t i = 0; i < keys.size(); ++i) {
    positive += res[i];
    if (a.expect >= 0 && res[i] != a.expect) ++mismatched;
    if (!a.summary) std::printf("%s\t%d\n", hex64(keys[i]).c_str(), res[i]);
  }
  std::fprintf(a.summary ? stdout : stderr, "queried %zu keys, %" PRIu64 " positive\n", keys.size(), positive);
  if (a.expect >= 0 && mismatched) {
    std::fprintf(stderr, "%" PRIu64 " keys differ from expected %d\n", mismatched, a.expect);
    return kExitVerification;
  }
  return kExitOk;
}

struct BenchArgs {
  std::string suite, out = "-", seeds;
  double scale = 1.0;
};

int run_bench(const BenchArgs& a) {
  std::vector<uint64_t> seeds;
  if (a.seeds.empty()) {
    seeds.push_back(resolve_seed(""));
  } else {
    std::istringstream in(a.seeds);
    std::string tok;
    while (std::getline(in, tok, ',')) seeds.push_back(parse_seed(tok));
  }
  check(cf_bench_run(a.suite.c_str(), a.scale, seeds.data(), seeds.size(), a.out.c_str()), "bench");
  return kExitOk;
}

std::vector<uint32_t> bytes_to_symbols(const std::vector<uint8_t>& bytes) {
  return {bytes.begin(), bytes.end()};
}

struct HuffArgs {
  std::string in, out, seed;
  bool verify = false, json = false, codes = false;
  uint64_t at = 0;
};

int run_huff_encode(const HuffArgs& a) {
  const uint64_t seed = resolve_seed(a.seed);
  const auto symbols = bytes_to_symbols(read_file(a.in));
  cf_text* raw = nullptr;
  check(cf_text_encode(symbols.data(), symbols.size(), seed, &raw), "encode");
  TextPtr t(raw);
  uint8_t* data = nullptr;
  size_t size = 0;
  check(cf_text_serialize(t.get(), &data, &size), "serialize");
  BufferPtr buf(data);
  write_file(a.out, data, size);

  cf_text_info info;
  check(cf_text_info_get(t.get(), &info), "info");
  cf_huffman_stats stats;
  check(cf_huffman_stats_get(symbols.data(), symbols.size(), &stats), "stats");
  json j;
  j["symbols"] = info.length;
  j["alphabet"] = info.alphabet;
  j["entropy"] = stats.entropy;
  j["huffman_bits_per_symbol"] = stats.average_length;
  j["bits_per_symbol"] = info.bits_per_symbol;
  j["overhead"] = info.bits_per_symbol - stats.entropy;
  j["filter_bits"] = info.filter_bits;
  j["file_bytes"] = size;
  j["seed"] = hex64(seed);
  int rc = kExitOk;
  if (a.verify) {
    std::vector<uint32_t> back(info.length);
    check(cf_text_decode_all(t.get(), back.data(), back.size()), "decode");
    const bool ok = back == symbols;
    j["verified"] = ok;
    if (!ok) rc = kExitVerification;
  }
  emit(j, a.json);
  return rc;
}

TextPtr load_text(const std::string& path) {
  const auto bytes = read_file(path);
  cf_text* raw = nullptr;
  check(cf_text_deserialize(bytes.data(), bytes.size(), &raw), "load text");
  return TextPtr(raw);
}

int run_huff_decode(const HuffArgs& a) {
  auto t = load_text(a.in);
  if (a.at > 0) {
    uint32_t sym = 0;
    check(cf_text_decode_at(t.get(), a.at, &sym), "decode");
    std::printf("%u\n", sym);
    return kExitOk;
  }
  if (a.out.empty()) raise(kExitUsage, "decode needs --out or --at");
  cf_text_info info;
  check(cf_text_info_get(t.get(), &info), "info");
  std::vector<uint32_t> symbols(info.length);
  check(cf_text_decode_all(t.get(), symbols.data(), symbols.size()), "decode");
  std::vector<uint8_t> bytes(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] > 0xFF) raise(kExitConstruction, "decoded symbol does not fit in a byte");
    bytes[i] = static_cast<uint8_t>(symbols[i]);
  }
  write_file(a.out, bytes.data(), bytes.size());
  return kExitOk;
}

int run_huff_stat(const HuffArgs& a) {
  const auto symbols = bytes_to_symbols(read_file(a.in));
  cf_huffman_stats s;
  check(cf_huffman_stats_get(symbols.data(), symbols.size(), &s), "stat");
  json j;
  j["symbols"] = s.length;
  j["alphabet"] = s.alphabet;
  j["entropy"] = s.entropy;
  j["average_code_length"] = s.average_length;
  j["max_code_length"] = s.max_code_length;
  j["overhead_bound"] = s.entropy + 0.22;
  if (a.codes) {
    cf_text* raw = nullptr;
    check(cf_text_encode(symbols.data(), symbols.size(), resolve_seed(a.seed), &raw), "encode");
    TextPtr t(raw);
    json codes = json::object();
    for (uint32_t i = 0; i < s.alphabet; ++i) {
      uint32_t sym = 0;
      char code[256];
      check(cf_text_codebook_entry(t.get(), i, &sym, code), "codebook");
      codes[std::to_string(sym)] = code;
    }
    j["codes"] = codes;
  }
  emit(j, a.json);
  return kExitOk;
}

struct CuckooArgs {
  uint64_t m = 500000;
  double r = 0.4;
  uint32_t rounds = 20;
  bool othello = false, json = false;
  std::string seed;
};

int run_cuckoo(const CuckooArgs& a) {
  const uint64_t seed = resolve_seed(a.seed);
  cf_cuckoo_report r;
  check(cf_cuckoo_sim(a.m, a.r, a.othello ? 1 : 0, a.rounds, seed, &r), "cuckoo-sim");
  json j;
  j["m"] = a.m;
  j["load"] = a.r;
  j["stored"] = r.stored;
  j["in_t1"] = r.in_t1;
  j["in_t2"] = r.in_t2;
  j["rebuilds"] = r.rebuilds;
  j["lambda_measured"] = r.lambda_measured;
  j["lambda_theory"] = r.lambda_theory;
  j["predictor_mb"] = static_cast<double>(r.predictor_bits) / 1e6;
  j["terminal_othello"] = a.othello;
  j["rounds"] = r.rounds;
  j["converged"] = r.converged != 0;
  j["error_rates"] = std::vector<double>(r.error_rate, r.error_rate + r.rounds);
  j["mean_probes"] = r.mean_probes;
  j["baseline_probes"] = r.baseline_probes;
  j["seed"] = hex64(seed);
  emit(j, a.json);
  return r.converged ? kExitOk : kExitVerification;
}

struct LsmArgs {
  uint32_t runs = 10;
  uint64_t keys = 10000, queries = 100000;
  bool json = false;
  std::string seed;
};

int run_lsm(const LsmArgs& a) {
  const uint64_t seed = resolve_seed(a.seed);
  cf_lsm_report r;
  check(cf_lsm_sim(a.runs, a.keys, a.queries, seed, &r), "lsm-sim");
  json j;
  j["runs"] = r.runs;
  j["keys"] = r.keys;
  j["filter_bits_per_key"] = r.keys ? static_cast<double>(r.filter_bits) / static_cast<double>(r.keys) : 0.0;
  j["queries"] = r.queries;
  j["max_extra_reads"] = r.max_extra_reads;
  j["mean_extra_reads"] = r.mean_extra_reads;
  j["oracle_mismatches"] = r.oracle_mismatches;
  j["false_negatives"] = r.false_negatives;
  j["seed"] = hex64(seed);
  emit(j, a.json);
  const bool ok = r.max_extra_reads <= 1 && r.oracle_mismatches == 0 && r.false_negatives == 0;
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ChainedFilter command-line tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cf_version()));

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand("bounds", "Print space bounds for (epsilon, lambda)");
  c_bounds->add_option("--epsilon,-e", bounds.epsilon, "Target false positive rate")->capture_default_str();
  c_bounds->add_option("--lambda,-l", bounds.lambda, "Negative/positive ratio")->capture_default_str();
  c_bounds->add_flag("--json", bounds.json, "JSON output");

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Build a filter from key files");
  c_build->add_option("--positives,-p", build.positives, "Positive keys")->required()->check(CLI::ExistingFile);
  auto* o_uni = c_build->add_option("--universe,-u", build.universe, "Universe keys (negatives = universe minus positives)")
                    ->check(CLI::ExistingFile);
  c_build->add_option("--lambda,-l", build.lambda, "Generate lambda*n random negatives instead of --universe")
      ->excludes(o_uni);
  c_build->add_option("--combinator,-c", build.combinator, "and | andnot")
      ->check(CLI::IsMember({"and", "andnot"}))
      ->capture_default_str();
  c_build->add_option("--epsilon,-e", build.epsilon, "False positive rate (0 = exact)")->check(CLI::Range(0.0, 1.0));
  c_build->add_option("--delta", build.delta, "andnot layer ratio")->check(CLI::Range(0.0, 1.0));
  c_build->add_option("--seed,-s", build.seed, "Hash seed (default CF_SEED or 0xC0FFEE)");
  c_build->add_option("--out,-o", build.out, "Output filter file")->required();
  c_build->add_flag("--hex", build.hex, "Key files are newline-separated hex");
  c_build->add_flag("--verify", build.verify, "Check every input key after building");
  c_build->add_flag("--json", build.json, "JSON output");

  QueryArgs query;
  auto* c_query = app.add_subcommand("query", "Query keys against a filter file");
  c_query->add_option("--filter,-f", query.filter, "Filter file")->required()->check(CLI::ExistingFile);
  c_query->add_option("--keys,-k", query.keys, "Keys to query")->required()->check(CLI::ExistingFile);
  c_query->add_flag("--hex", query.hex, "Key file is newline-separated hex");
  c_query->add_flag("--summary", query.summary, "Print only counts");
  c_query->add_option("--expect", query.expect, "Fail with exit 4 unless every answer equals this")
      ->check(CLI::IsMember({0, 1}));

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  c_bench->add_option("--suite", bench.suite, "dict | huffman | cuckoo | lsm")
      ->required()
      ->check(CLI::IsMember({"dict", "huffman", "cuckoo", "lsm"}));
  c_bench->add_option("--scale", bench.scale, "Problem size multiplier")->check(CLI::PositiveNumber)->capture_default_str();
  c_bench->add_option("--seeds", bench.seeds, "Comma-separated seeds");
  c_bench->add_option("--out,-o", bench.out, "CSV path, '-' for stdout")->capture_default_str();

  HuffArgs huff;
  auto* c_huff = app.add_subcommand("huffman", "Random-access Huffman coding of byte files");
  c_huff->require_subcommand(1);
  auto* h_enc = c_huff->add_subcommand("encode", "Encode a byte file");
  h_enc->add_option("--in,-i", huff.in, "Input bytes")->required()->check(CLI::ExistingFile);
  h_enc->add_option("--out,-o", huff.out, "Encoded output")->required();
  h_enc->add_option("--seed,-s", huff.seed, "Hash seed");
  h_enc->add_flag("--verify", huff.verify, "Decode every position and compare");
  h_enc->add_flag("--json", huff.json, "JSON output");
  auto* h_dec = c_huff->add_subcommand("decode", "Decode an encoded file");
  h_dec->add_option("--in,-i", huff.in, "Encoded input")->required()->check(CLI::ExistingFile);
  h_dec->add_option("--out,-o", huff.out, "Decoded bytes");
  h_dec->add_option("--at", huff.at, "Decode only this 1-based position")->check(CLI::PositiveNumber);
  auto* h_stat = c_huff->add_subcommand("stat", "Entropy and code statistics of a byte file");
  h_stat->add_option("--in,-i", huff.in, "Input bytes")->required()->check(CLI::ExistingFile);
  h_stat->add_flag("--codes", huff.codes, "Include the code table");
  h_stat->add_option("--seed,-s", huff.seed, "Hash seed");
  h_stat->add_flag("--json", huff.json, "JSON output");

  CuckooArgs cuckoo;
  auto* c_cuckoo = app.add_subcommand("cuckoo-sim", "Cuckoo hashing with a trained table predictor");
  c_cuckoo->add_option("--m", cuckoo.m, "Slots per table")->check(CLI::PositiveNumber)->capture_default_str();
  c_cuckoo->add_option("--load,-r", cuckoo.r, "Load factor r in (0, 0.5)")->check(CLI::Range(0.0, 0.5))->capture_default_str();
  c_cuckoo->add_option("--rounds", cuckoo.rounds, "Maximum training rounds")
      ->check(CLI::Range(1, CF_MAX_TRAIN_ROUNDS))
      ->capture_default_str();
  c_cuckoo->add_flag("--othello", cuckoo.othello, "Terminal Othello layer");
  c_cuckoo->add_option("--seed,-s", cuckoo.seed, "Seed");
  c_cuckoo->add_flag("--json", cuckoo.json, "JSON output");

  LsmArgs lsm;
  auto* c_lsm = app.add_subcommand("lsm-sim", "LSM level point-query simulation");
  c_lsm->add_option("--runs", lsm.runs, "Sorted runs")->check(CLI::Range(1, 100000))->capture_default_str();
  c_lsm->add_option("--keys", lsm.keys, "Keys per run")->check(CLI::PositiveNumber)->capture_default_str();
  c_lsm->add_option("--queries", lsm.queries, "Point queries")->capture_default_str();
  c_lsm->add_option("--seed,-s", lsm.seed, "Seed");
  c_lsm->add_flag("--json", lsm.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_bounds) return run_bounds(bounds);
    if (*c_build) return run_build(build);
    if (*c_query) return run_query(query);
    if (*c_bench) return run_bench(bench);
    if (*h_enc) return run_huff_encode(huff);
    if (*h_dec) return run_huff_decode(huff);
    if (*h_stat) return run_huff_stat(huff);
    if (*c_cuckoo) return run_cuckoo(cuckoo);
    if (*c_lsm) return run_lsm(lsm);
  } catch (const Failure& f) {
    std::fprintf(stderr, "cfcli: %s\n", f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cfcli: %s\n", e.what());
    return kExitConstruction;
  }
  return kExitUsage;
}
