#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gasmatch/corpus.hpp"
#include "gasmatch/gas.hpp"
#include "gasmatch/matchers.hpp"

namespace gasmatch {

struct BenchConfig {
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  /// Only kind and path are used; n and seed come from the grid and `seed`.
  std::vector<CorpusSpec> corpora = {{CorpusKind::dna, 0, 0, {}},
                                     {CorpusKind::english, 0, 0, {}},
                                     {CorpusKind::proteins, 0, 0, {}},
                                     {CorpusKind::sources, 0, 0, {}}};
  std::vector<std::size_t> n_grid = {1024, 16 * 1024, 128 * 1024};
  std::vector<std::size_t> m_grid = {4, 8, 12, 16, 24, 32, 64, 128, 256, 512};
  std::size_t patterns_per_cell = 11;
  std::uint64_t seed = 1;
  double gas_price_gwei = 25.0;
  double usd_per_eth = 1250.0;
  GasSchedule schedule;
  Gas gas_limit = kUnlimitedGas;
  /// Worker threads for cell-level parallelism; 1 runs everything in order.
  std::size_t threads = 1;

  /// Throws ConfigError on empty grids, even pattern counts, m or n of zero.
  void validate() const;

  /// Applies `key = value` entries. Bench keys: algorithms, corpora, n, m,
  /// patterns, seed, gas_price_gwei, usd_per_eth, gas_limit, threads; every
  /// gas schedule key is accepted too. Lists are comma separated; a corpus
  /// is a kind name or `file:PATH`.
  void apply(std::span<const ConfigEntry> entries);
  static BenchConfig parse(std::string_view text);
  static BenchConfig load_file(const std::filesystem::path& path);
};

/// One benchmark cell: an algorithm on one text with patterns of one length.
struct BenchRecord {
  Algorithm algorithm = Algorithm::naive;
  std::string corpus;
  std::size_t n = 0;
  std::size_t m = 0;
  Gas median_gas = 0;
  double median_time_s = 0.0;
  double fee_usd = 0.0;
  double gas_per_char = 0.0;
  /// Any pattern in the cell ran out of gas.
  bool out_of_gas = false;
  /// Per-pattern raw outcomes (empty for records read back from CSV).
  std::vector<SearchOutcome> outcomes;
};

/// gas * gwei * 1e-9 * usd_per_eth
double fee_usd(double gas, double gas_price_gwei, double usd_per_eth) noexcept;

/// median_gas / n
double gas_per_char(const BenchRecord& record);

/// Middle element of an odd-sized sample (lower middle for even sizes).
/// Throws std::invalid_argument on an empty sample.
template <class T>
T median_of(std::vector<T> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

/// Seed for sampling the patterns of the (n, m) cells; shared by all algorithms
/// and corpora so every algorithm sees the same offsets.
std::uint64_t cell_pattern_seed(std::uint64_t seed, std::size_t n, std::size_t m);

/// Samples config.patterns_per_cell patterns of length m from `text`, runs the
/// searcher once per pattern with a fresh meter, and aggregates medians.
/// Throws std::invalid_argument when m > text.size().
BenchRecord run_cell(Algorithm algorithm, const Bytes& text, std::string corpus_label,
                     std::size_t m, const BenchConfig& config);

/// Full cross product of the config's grids, skipping m > n. Sorted by
/// (corpus, n, m, algorithm).
std::vector<BenchRecord> run_matrix(const BenchConfig& config);

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GasTimeFit {
  double slope = 0.0;      // gas per second
  double intercept = 0.0;  // gas
  double usd_per_second = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of gas against time over (time_s, gas) points.
/// Throws DegenerateFit with fewer than two points or no spread in time.
GasTimeFit fit_gas_time(std::span<const std::pair<double, double>> points,
                        double gas_price_gwei, double usd_per_eth);
GasTimeFit fit_gas_time(std::span<const BenchRecord> records, double gas_price_gwei,
                        double usd_per_eth);

// Output formats.
inline constexpr std::string_view kCsvHeader =
    "corpus,n,m,algorithm,median_gas,median_time_s,fee_usd,gas_per_char";

std::string to_csv(std::span<const BenchRecord> records);
/// Parses CSV produced by to_csv. Throws ConfigError on malformed input.
std::vector<BenchRecord> parse_csv(std::string_view text);

/// Gas (millions) and fee per corpus for one (n, m); defaults to the largest
/// n and m present. Fees are recomputed at the given rates.
std::string render_fee_table(std::span<const BenchRecord> records, double gas_price_gwei,
                             double usd_per_eth);
/// Gas per text character per (corpus, n) for one m; 16 if present, else the
/// smallest m.
std::string render_gas_per_char_table(std::span<const BenchRecord> records);
/// Median time (seconds) per (corpus, algorithm) across m, largest n.
std::string render_time_table(std::span<const BenchRecord> records);
/// Median gas (millions) per (corpus, algorithm) across m, largest n.
std::string render_gas_table(std::span<const BenchRecord> records);
/// Two lines: the regression and its USD-per-second conversion.
std::string render_fit_report(const GasTimeFit& fit);

/// Writes the four markdown tables into `dir` (created if missing).
void write_tables(const std::filesystem::path& dir, std::span<const BenchRecord> records,
                  double gas_price_gwei, double usd_per_eth);

}  // namespace gasmatch
