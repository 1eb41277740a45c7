// gasmatch command-line front end: search, gen, bench, report.
//
// Exit status: 0 success, 1 usage or invalid input, 2 I/O, 3 out of gas.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gasmatch/gasmatch.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitOutOfGas = 3;

constexpr const char* kScheduleKeys[] = {
    "word_load",   "byte_read",   "arith",           "mul_div",
    "shift",       "table_read",  "table_write",     "branch_overhead",
    "keccak_base", "keccak_per_word", "calldata_per_byte",
};

struct CliError {
  int code;
  std::string message;
};

int exit_code(gm_status status) {
  switch (status) {
    case GM_OK: return kExitOk;
    case GM_ERR_IO: return kExitIo;
    case GM_ERR_OUT_OF_GAS: return kExitOutOfGas;
    default: return kExitUsage;
  }
}

void check(gm_status status) {
  if (status != GM_OK) throw CliError{exit_code(status), gm_last_error()};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Schedule = std::unique_ptr<gm_schedule, Deleter<gm_schedule, gm_schedule_destroy>>;
using Outcome = std::unique_ptr<gm_outcome, Deleter<gm_outcome, gm_outcome_destroy>>;
using BenchConfig =
    std::unique_ptr<gm_bench_config, Deleter<gm_bench_config, gm_bench_config_destroy>>;
using BenchResults =
    std::unique_ptr<gm_bench_results, Deleter<gm_bench_results, gm_bench_results_destroy>>;

struct Buffer {
  std::uint8_t* data = nullptr;
  std::size_t len = 0;
  Buffer() = default;
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  ~Buffer() { gm_buffer_free(data); }
};

std::string take_string(char* s) {
  std::string out(s);
  gm_buffer_free(s);
  return out;
}

std::vector<std::uint8_t> parse_hex(const std::string& hex) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw CliError{kExitUsage, "--pattern-hex: invalid hex digit `" + std::string(1, c) + "`"};
  };
  std::string digits = hex;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits.erase(0, 2);
  if (digits.size() % 2 != 0) throw CliError{kExitUsage, "--pattern-hex: odd number of digits"};
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(digits[i]) * 16 + nibble(digits[i + 1])));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
  std::string text_file;
  std::string corpus;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::optional<std::string> pattern;
  std::optional<std::string> pattern_hex;
  std::string algorithm = "all";
  std::string schedule_file;
  std::uint64_t gas_limit = GM_GAS_UNLIMITED;
};

int run_search(const SearchArgs& args) {
  Buffer text;
  if (!args.text_file.empty()) {
    check(gm_read_file(args.text_file.c_str(), &text.data, &text.len));
  } else {
    if (args.corpus.empty() || args.n == 0) {
      throw CliError{kExitUsage, "search: give --text FILE or --corpus KIND --n BYTES"};
    }
    check(gm_corpus_generate(args.corpus.c_str(), args.n, args.seed, &text.data, &text.len));
  }

  std::vector<std::uint8_t> pattern;
  if (args.pattern_hex) {
    pattern = parse_hex(*args.pattern_hex);
  } else if (args.pattern) {
    pattern.assign(args.pattern->begin(), args.pattern->end());
  } else {
    throw CliError{kExitUsage, "search: give --pattern or --pattern-hex"};
  }

  Schedule schedule;
  if (!args.schedule_file.empty()) {
    gm_schedule* s = nullptr;
    check(gm_schedule_load_file(args.schedule_file.c_str(), &s));
    schedule.reset(s);
  }

  std::vector<gm_algorithm> algorithms;
  if (args.algorithm == "all") {
    for (int a = 0; a < GM_ALGORITHM_COUNT; ++a) algorithms.push_back(static_cast<gm_algorithm>(a));
  } else {
    gm_algorithm a{};
    check(gm_algorithm_from_name(args.algorithm.c_str(), &a));
    algorithms.push_back(a);
  }

  std::printf("text_bytes: %zu\npattern_bytes: %zu\ncalldata_gas: %llu\n", text.len,
              pattern.size(),
              static_cast<unsigned long long>(
                  gm_calldata_cost(schedule.get(), text.len, pattern.size())));

  bool any_out_of_gas = false;
  std::vector<Outcome> outcomes;
  for (gm_algorithm a : algorithms) {
    gm_outcome* raw = nullptr;
    const gm_status st = gm_search(a, text.data, text.len, pattern.data(), pattern.size(),
                                   schedule.get(), args.gas_limit, &raw);
    if (st != GM_OK && st != GM_ERR_OUT_OF_GAS) check(st);
    any_out_of_gas = any_out_of_gas || st == GM_ERR_OUT_OF_GAS;
    outcomes.emplace_back(raw);
  }

  if (algorithms.size() == 1) {
    const gm_outcome* o = outcomes.front().get();
    std::printf("algorithm: %s\n", gm_algorithm_name(algorithms.front()));
    if (gm_outcome_out_of_gas(o)) {
      std::printf("positions: (aborted)\n");
    } else {
      std::printf("positions:");
      const std::uint64_t* pos = gm_outcome_positions(o);
      for (std::size_t i = 0; i < gm_outcome_count(o); ++i) {
        std::printf(" %llu", static_cast<unsigned long long>(pos[i]));
      }
      std::printf("\n");
    }
    std::printf("occurrences: %zu\ngas_used: %llu\ncomparisons: %llu\nwindow_alignments: %llu\n",
                gm_outcome_count(o), static_cast<unsigned long long>(gm_outcome_gas_used(o)),
                static_cast<unsigned long long>(gm_outcome_comparisons(o)),
                static_cast<unsigned long long>(gm_outcome_window_alignments(o)));
  } else {
    std::printf("| algorithm | occurrences | gas_used | comparisons | window_alignments | "
                "time_s |\n|---|---:|---:|---:|---:|---:|\n");
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      const gm_outcome* o = outcomes[i].get();
      if (gm_outcome_out_of_gas(o)) {
        std::printf("| %s | out of gas | %llu | - | - | - |\n", gm_algorithm_name(algorithms[i]),
                    static_cast<unsigned long long>(gm_outcome_gas_used(o)));
        continue;
      }
      std::printf("| %s | %zu | %llu | %llu | %llu | %.6f |\n", gm_algorithm_name(algorithms[i]),
                  gm_outcome_count(o), static_cast<unsigned long long>(gm_outcome_gas_used(o)),
                  static_cast<unsigned long long>(gm_outcome_comparisons(o)),
                  static_cast<unsigned long long>(gm_outcome_window_alignments(o)),
                  gm_outcome_wall_time(o));
    }
  }

  if (any_out_of_gas) {
    std::fprintf(stderr, "error: out of gas (limit %llu)\n",
                 static_cast<unsigned long long>(args.gas_limit));
    return kExitOutOfGas;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string corpus;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& args) {
  Buffer text;
  check(gm_corpus_generate(args.corpus.c_str(), args.n, args.seed, &text.data, &text.len));
  check(gm_write_file(args.out.c_str(), text.data, text.len));
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string config_file;
  std::string schedule_file;
  std::optional<std::string> algorithms, corpora, n, m;
  std::optional<std::string> patterns, seed, gas_price, eth_usd, threads, gas_limit;
  std::string out;
  std::string tables;
};

int run_bench(const BenchArgs& args) {
  BenchConfig config;
  {
    gm_bench_config* c = nullptr;
    if (!args.config_file.empty()) {
      check(gm_bench_config_load_file(args.config_file.c_str(), &c));
    } else {
      check(gm_bench_config_create(&c));
    }
    config.reset(c);
  }
  if (!args.schedule_file.empty()) {
    gm_schedule* s = nullptr;
    check(gm_schedule_load_file(args.schedule_file.c_str(), &s));
    const Schedule schedule(s);
    for (const char* key : kScheduleKeys) {
      std::uint64_t v = 0;
      check(gm_schedule_get(schedule.get(), key, &v));
      check(gm_bench_config_set(config.get(), key, std::to_string(v).c_str()));
    }
  }
  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"algorithms", &args.algorithms}, {"corpora", &args.corpora},
      {"n", &args.n},                   {"m", &args.m},
      {"patterns", &args.patterns},     {"seed", &args.seed},
      {"gas_price_gwei", &args.gas_price}, {"usd_per_eth", &args.eth_usd},
      {"threads", &args.threads},       {"gas_limit", &args.gas_limit},
  };
  for (const auto& [key, value] : overrides) {
    if (*value) check(gm_bench_config_set(config.get(), key, (*value)->c_str()));
  }

  gm_bench_results* raw = nullptr;
  check(gm_bench_run(config.get(), &raw));
  const BenchResults results(raw);

  if (!args.out.empty()) {
    check(gm_bench_results_write_csv(results.get(), args.out.c_str()));
  } else {
    // No output file: CSV on stdout.
    gm_record r{};
    std::printf("corpus,n,m,algorithm,median_gas,median_time_s,fee_usd,gas_per_char\n");
    for (std::size_t i = 0; i < gm_bench_results_count(results.get()); ++i) {
      check(gm_bench_results_get(results.get(), i, &r));
      std::printf("%s,%llu,%llu,%s,%llu,%.9g,%.4f,%.6f\n", r.corpus,
                  static_cast<unsigned long long>(r.n), static_cast<unsigned long long>(r.m),
                  gm_algorithm_name(r.algorithm), static_cast<unsigned long long>(r.median_gas),
                  r.median_time_s, r.fee_usd, r.gas_per_char);
    }
  }
  if (!args.tables.empty()) {
    double gwei = 25.0;
    double usd = 1250.0;
    if (args.gas_price) gwei = std::stod(*args.gas_price);
    if (args.eth_usd) usd = std::stod(*args.eth_usd);
    check(gm_bench_results_write_tables(results.get(), args.tables.c_str(), gwei, usd));
  }
  if (gm_bench_results_out_of_gas(results.get())) {
    std::fprintf(stderr, "warning: at least one cell ran out of gas\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
  std::string csv;
  bool fit = false;
  bool fees = false;
  double gas_price = 25.0;
  double eth_usd = 1250.0;
};

int run_report(const ReportArgs& args) {
  gm_bench_results* raw = nullptr;
  check(gm_bench_results_load_csv(args.csv.c_str(), &raw));
  const BenchResults results(raw);
  if (gm_bench_results_count(results.get()) == 0) {
    throw CliError{kExitUsage, "report: " + args.csv + " has no rows"};
  }

  std::vector<gm_report_kind> kinds;
  if (args.fees) kinds.push_back(GM_REPORT_FEES);
  if (args.fit) kinds.push_back(GM_REPORT_FIT);
  if (kinds.empty()) kinds = {GM_REPORT_FEES, GM_REPORT_GAS_PER_CHAR};

  std::string out;
  for (gm_report_kind kind : kinds) {
    char* text = nullptr;
    check(gm_report_render(results.get(), kind, args.gas_price, args.eth_usd, &text));
    if (!out.empty()) out += "\n";
    out += take_string(text);
  }
  std::fputs(out.c_str(), stdout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gas-metered exact pattern matching over a 256-bit word"};
  app.require_subcommand(1);

  SearchArgs search;
  auto* cmd_search = app.add_subcommand("search", "Search a text and report positions and gas");
  auto* text_opt = cmd_search->add_option("--text", search.text_file, "Text file");
  auto* corpus_opt =
      cmd_search->add_option("--corpus", search.corpus, "Synthetic corpus kind")
          ->check(CLI::IsMember({"dna", "proteins", "english", "sources"}));
  cmd_search->add_option("--n", search.n, "Synthetic text size in bytes");
  cmd_search->add_option("--seed", search.seed, "Generator seed");
  text_opt->excludes(corpus_opt);
  auto* pat_opt = cmd_search->add_option("--pattern", search.pattern, "Pattern as text");
  auto* hex_opt =
      cmd_search->add_option("--pattern-hex", search.pattern_hex, "Pattern as hex bytes");
  pat_opt->excludes(hex_opt);
  cmd_search->add_option("--algorithm", search.algorithm, "Algorithm name or `all`");
  cmd_search->add_option("--schedule", search.schedule_file, "Gas schedule file");
  cmd_search->add_option("--gas-limit", search.gas_limit, "Gas limit");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic corpus file");
  cmd_gen->add_option("--corpus", gen.corpus, "Corpus kind")
      ->required()
      ->check(CLI::IsMember({"dna", "proteins", "english", "sources"}));
  cmd_gen->add_option("--n", gen.n, "Size in bytes")->required();
  cmd_gen->add_option("--seed", gen.seed, "Generator seed");
  cmd_gen->add_option("--out", gen.out, "Output file")->required();

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run the benchmark matrix");
  cmd_bench->add_option("--config", bench.config_file, "Config file (key = value)");
  cmd_bench->add_option("--schedule", bench.schedule_file, "Gas schedule file");
  cmd_bench->add_option("--algorithms", bench.algorithms, "Comma-separated algorithms or `all`");
  cmd_bench->add_option("--corpora", bench.corpora, "Comma-separated kinds or file:PATH");
  cmd_bench->add_option("--n", bench.n, "Comma-separated text sizes");
  cmd_bench->add_option("--m", bench.m, "Comma-separated pattern sizes");
  cmd_bench->add_option("--patterns", bench.patterns, "Patterns per cell (odd)");
  cmd_bench->add_option("--seed", bench.seed, "Seed");
  cmd_bench->add_option("--gas-price", bench.gas_price, "Gas price in Gwei");
  cmd_bench->add_option("--eth-usd", bench.eth_usd, "USD per ETH");
  cmd_bench->add_option("--threads", bench.threads, "Worker threads");
  cmd_bench->add_option("--gas-limit", bench.gas_limit, "Per-search gas limit");
  cmd_bench->add_option("--out", bench.out, "CSV output file (stdout if omitted)");
  cmd_bench->add_option("--tables", bench.tables, "Directory for markdown tables");

  ReportArgs report;
  auto* cmd_report = app.add_subcommand("report", "Derive fee, per-character, and fit reports");
  cmd_report->add_option("--csv", report.csv, "Bench CSV")->required();
  cmd_report->add_flag("--fit", report.fit, "Gas-vs-time least-squares fit");
  cmd_report->add_flag("--fees", report.fees, "Gas and fee table");
  cmd_report->add_option("--gas-price", report.gas_price, "Gas price in Gwei");
  cmd_report->add_option("--eth-usd", report.eth_usd, "USD per ETH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_search) return run_search(search);
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_bench) return run_bench(bench);
    if (*cmd_report) return run_report(report);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
