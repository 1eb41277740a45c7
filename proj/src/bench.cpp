#include "gasmatch/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

namespace gasmatch {

namespace {

template <class... Args>
std::string format(const char* fmt, Args... args) {
  const int len = std::snprintf(nullptr, 0, fmt, args...);
  std::string s(static_cast<std::size_t>(len), '\0');
  std::snprintf(s.data(), s.size() + 1, fmt, args...);
  return s;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::size_t> parse_size_list(const std::string& value, const std::string& key) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_u64(item, key));
  return out;
}

std::string size_label(std::size_t n) {
  if (n % 1024 == 0) return std::to_string(n / 1024) + " KiB";
  return std::to_string(n) + " B";
}

/// Cents, rounded half away from zero ("%.2f" would round 1765.625 down).
std::string money(double usd) { return format("$%.2f", std::round(usd * 100.0) / 100.0); }

bool record_less(const BenchRecord& a, const BenchRecord& b) {
  return std::forward_as_tuple(a.corpus, a.n, a.m, algorithm_name(a.algorithm)) <
         std::forward_as_tuple(b.corpus, b.n, b.m, algorithm_name(b.algorithm));
}

/// Lookup of records by (corpus, n, m, algorithm) plus the axis values seen.
struct RecordIndex {
  std::map<std::tuple<std::string, std::size_t, std::size_t, Algorithm>, const BenchRecord*> cells;
  std::vector<std::string> corpora;  // first-seen order
  std::set<std::size_t> ns;
  std::set<std::size_t> ms;
  std::vector<Algorithm> algorithms;  // display order

  explicit RecordIndex(std::span<const BenchRecord> records) {
    std::set<Algorithm> seen_algorithms;
    for (const auto& r : records) {
      cells[{r.corpus, r.n, r.m, r.algorithm}] = &r;
      if (std::find(corpora.begin(), corpora.end(), r.corpus) == corpora.end()) {
        corpora.push_back(r.corpus);
      }
      ns.insert(r.n);
      ms.insert(r.m);
      seen_algorithms.insert(r.algorithm);
    }
    algorithms.assign(seen_algorithms.begin(), seen_algorithms.end());
    std::sort(algorithms.begin(), algorithms.end(), [](Algorithm a, Algorithm b) {
      return algorithm_display_name(a) < algorithm_display_name(b);
    });
  }

  const BenchRecord* find(const std::string& corpus, std::size_t n, std::size_t m,
                          Algorithm a) const {
    const auto it = cells.find({corpus, n, m, a});
    return it == cells.end() ? nullptr : it->second;
  }
};

void require_records(std::span<const BenchRecord> records) {
  if (records.empty()) throw std::invalid_argument("no benchmark records");
}

std::string render_by_m_table(std::span<const BenchRecord> records, const char* caption,
                              double (*value)(const BenchRecord&)) {
  require_records(records);
  const RecordIndex idx(records);
  const std::size_t n = *idx.ns.rbegin();
  std::string out = format("%s, n = %s\n\n| Set | Algorithm |", caption, size_label(n).c_str());
  for (std::size_t m : idx.ms) out += format(" %zu |", m);
  out += "\n|---|---|";
  for (std::size_t i = 0; i < idx.ms.size(); ++i) out += "---:|";
  out += "\n";
  for (const auto& corpus : idx.corpora) {
    for (Algorithm a : idx.algorithms) {
      out += format("| %s | %s |", corpus.c_str(), std::string(algorithm_display_name(a)).c_str());
      for (std::size_t m : idx.ms) {
        const BenchRecord* r = idx.find(corpus, n, m, a);
        out += r ? format(" %.2f |", value(*r)) : std::string(" - |");
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

void BenchConfig::validate() const {
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  if (corpora.empty()) throw ConfigError("no corpora selected");
  if (n_grid.empty()) throw ConfigError("empty text-size grid");
  if (m_grid.empty()) throw ConfigError("empty pattern-size grid");
  if (patterns_per_cell == 0 || patterns_per_cell % 2 == 0) {
    throw ConfigError("patterns per cell must be odd");
  }
  for (std::size_t n : n_grid) {
    if (n == 0) throw ConfigError("text size must be at least 1");
  }
  for (std::size_t m : m_grid) {
    if (m == 0) throw ConfigError("pattern size must be at least 1");
  }
  if (threads == 0) throw ConfigError("threads must be at least 1");
  if (gas_price_gwei < 0 || usd_per_eth < 0) throw ConfigError("fee rates must be >= 0");
}

void BenchConfig::apply(std::span<const ConfigEntry> entries) {
  for (const auto& e : entries) {
    const std::string& k = e.key;
    if (k == "algorithms") {
      algorithms.clear();
      for (const auto& name : split_list(e.value)) {
        if (name == "all") {
          algorithms.assign(kAllAlgorithms.begin(), kAllAlgorithms.end());
          continue;
        }
        const auto a = algorithm_from_name(name);
        if (!a) throw ConfigError("unknown algorithm `" + name + "`");
        algorithms.push_back(*a);
      }
    } else if (k == "corpora") {
      corpora.clear();
      for (const auto& item : split_list(e.value)) {
        CorpusSpec spec;
        if (item.rfind("file:", 0) == 0) {
          spec.kind = CorpusKind::file;
          spec.path = item.substr(5);
        } else {
          const auto kind = corpus_kind_from_name(item);
          if (!kind || *kind == CorpusKind::file) {
            throw ConfigError("unknown corpus `" + item + "`");
          }
          spec.kind = *kind;
        }
        corpora.push_back(std::move(spec));
      }
    } else if (k == "n") {
      n_grid = parse_size_list(e.value, k);
    } else if (k == "m") {
      m_grid = parse_size_list(e.value, k);
    } else if (k == "patterns") {
      patterns_per_cell = parse_u64(e.value, k);
    } else if (k == "seed") {
      seed = parse_u64(e.value, k);
    } else if (k == "gas_price_gwei") {
      gas_price_gwei = parse_double(e.value, k);
    } else if (k == "usd_per_eth") {
      usd_per_eth = parse_double(e.value, k);
    } else if (k == "gas_limit") {
      gas_limit = parse_u64(e.value, k);
    } else if (k == "threads") {
      threads = parse_u64(e.value, k);
    } else if (const auto op = op_from_key(k)) {
      schedule.set(*op, parse_u64(e.value, k));
    } else {
      throw ConfigError("line " + std::to_string(e.line) + ": unknown key `" + k + "`");
    }
  }
}

BenchConfig BenchConfig::parse(std::string_view text) {
  BenchConfig config;
  const auto entries = parse_config_text(text);
  config.apply(entries);
  config.validate();
  return config;
}

BenchConfig BenchConfig::load_file(const std::filesystem::path& path) {
  return parse(read_file(path));
}

// ---------------------------------------------------------------------------
// Running

double fee_usd(double gas, double gas_price_gwei, double usd_per_eth) noexcept {
  return gas * gas_price_gwei * 1e-9 * usd_per_eth;
}

double gas_per_char(const BenchRecord& record) {
  if (record.n == 0) throw std::invalid_argument("gas_per_char: n must be at least 1");
  return static_cast<double>(record.median_gas) / static_cast<double>(record.n);
}

std::uint64_t cell_pattern_seed(std::uint64_t seed, std::size_t n, std::size_t m) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(n) << 20) ^ m));
}

BenchRecord run_cell(Algorithm algorithm, const Bytes& text, std::string corpus_label,
                     std::size_t m, const BenchConfig& config) {
  const auto patterns = sample_patterns(text, m, config.patterns_per_cell,
                                        cell_pattern_seed(config.seed, text.size(), m));
  BenchRecord record;
  record.algorithm = algorithm;
  record.corpus = std::move(corpus_label);
  record.n = text.size();
  record.m = m;
  record.outcomes.reserve(patterns.size());

  std::vector<Gas> gas;
  std::vector<double> times;
  for (const auto& pattern : patterns) {
    GasMeter meter(config.schedule, config.gas_limit);
    auto outcome = search(algorithm, text, pattern, meter);
    record.out_of_gas = record.out_of_gas || outcome.out_of_gas;
    gas.push_back(outcome.gas_used);
    times.push_back(outcome.wall_time_s);
    record.outcomes.push_back(std::move(outcome));
  }
  record.median_gas = median_of(std::move(gas));
  record.median_time_s = median_of(std::move(times));
  record.fee_usd = fee_usd(static_cast<double>(record.median_gas), config.gas_price_gwei,
                           config.usd_per_eth);
  record.gas_per_char = gas_per_char(record);
  return record;
}

std::vector<BenchRecord> run_matrix(const BenchConfig& config) {
  config.validate();

  struct Text {
    std::string label;
    Bytes bytes;
  };
  struct Cell {
    const Text* text;
    std::size_t m;
    Algorithm algorithm;
  };

  std::vector<Text> texts;
  texts.reserve(config.corpora.size() * config.n_grid.size());
  for (const auto& corpus : config.corpora) {
    for (std::size_t n : config.n_grid) {
      CorpusSpec spec = corpus;
      spec.n = n;
      spec.seed = config.seed;
      texts.push_back({spec.label(), generate(spec)});
    }
  }

  std::vector<Cell> cells;
  for (const auto& text : texts) {
    for (std::size_t m : config.m_grid) {
      if (m > text.bytes.size()) continue;
      for (Algorithm a : config.algorithms) cells.push_back({&text, m, a});
    }
  }

  std::vector<BenchRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        const Cell& c = cells[i];
        records[i] = run_cell(c.algorithm, c.text->bytes, c.text->label, c.m, config);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(config.threads, std::max<std::size_t>(cells.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(records.begin(), records.end(), record_less);
  return records;
}

// ---------------------------------------------------------------------------
// Fit

GasTimeFit fit_gas_time(std::span<const std::pair<double, double>> points, double gas_price_gwei,
                        double usd_per_eth) {
  if (points.size() < 2) throw DegenerateFit("fit needs at least two points");
  const double count = static_cast<double>(points.size());
  double mean_t = 0.0;
  double mean_g = 0.0;
  for (const auto& [t, g] : points) {
    mean_t += t;
    mean_g += g;
  }
  mean_t /= count;
  mean_g /= count;
  double stt = 0.0;
  double stg = 0.0;
  for (const auto& [t, g] : points) {
    stt += (t - mean_t) * (t - mean_t);
    stg += (t - mean_t) * (g - mean_g);
  }
  if (!(stt > 0.0)) throw DegenerateFit("all execution times are equal");
  GasTimeFit fit;
  fit.slope = stg / stt;
  fit.intercept = mean_g - fit.slope * mean_t;
  fit.usd_per_second = fee_usd(fit.slope, gas_price_gwei, usd_per_eth);
  fit.points = points.size();
  return fit;
}

GasTimeFit fit_gas_time(std::span<const BenchRecord> records, double gas_price_gwei,
                        double usd_per_eth) {
  std::vector<std::pair<double, double>> points;
  points.reserve(records.size());
  for (const auto& r : records) {
    points.emplace_back(r.median_time_s, static_cast<double>(r.median_gas));
  }
  return fit_gas_time(points, gas_price_gwei, usd_per_eth);
}

// ---------------------------------------------------------------------------
// Output

std::string to_csv(std::span<const BenchRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += format("%s,%zu,%zu,%s,%llu,%.9g,%.4f,%.6f\n", r.corpus.c_str(), r.n, r.m,
                  std::string(algorithm_name(r.algorithm)).c_str(),
                  static_cast<unsigned long long>(r.median_gas), r.median_time_s, r.fee_usd,
                  r.gas_per_char);
  }
  return out;
}

std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::vector<BenchRecord> records;
  bool header_seen = false;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ConfigError("CSV: unexpected header `" + std::string(line) + "`");
      header_seen = true;
      continue;
    }
    const auto fields = split_list(line);
    const std::string where = "CSV line " + std::to_string(line_no);
    if (fields.size() != 8) throw ConfigError(where + ": expected 8 fields");
    BenchRecord r;
    r.corpus = fields[0];
    r.n = parse_u64(fields[1], where + " n");
    r.m = parse_u64(fields[2], where + " m");
    const auto a = algorithm_from_name(fields[3]);
    if (!a) throw ConfigError(where + ": unknown algorithm `" + fields[3] + "`");
    r.algorithm = *a;
    r.median_gas = parse_u64(fields[4], where + " median_gas");
    r.median_time_s = parse_double(fields[5], where + " median_time_s");
    r.fee_usd = parse_double(fields[6], where + " fee_usd");
    r.gas_per_char = parse_double(fields[7], where + " gas_per_char");
    records.push_back(std::move(r));
  }
  if (!header_seen) throw ConfigError("CSV: empty input");
  return records;
}

std::string render_fee_table(std::span<const BenchRecord> records, double gas_price_gwei,
                             double usd_per_eth) {
  require_records(records);
  const RecordIndex idx(records);
  const std::size_t n = *idx.ns.rbegin();
  const std::size_t m = *idx.ms.rbegin();
  std::string out = format("Gas usage (millions) and fee, m = %zu, n = %s, %g Gwei, %g USD/ETH\n\n",
                           m, size_label(n).c_str(), gas_price_gwei, usd_per_eth);
  out += "| Algorithm |";
  for (const auto& c : idx.corpora) out += format(" %s gas | %s fee |", c.c_str(), c.c_str());
  out += "\n|---|";
  for (std::size_t i = 0; i < idx.corpora.size(); ++i) out += "---:|---:|";
  out += "\n";
  for (Algorithm a : idx.algorithms) {
    out += format("| %s |", std::string(algorithm_display_name(a)).c_str());
    for (const auto& c : idx.corpora) {
      const BenchRecord* r = idx.find(c, n, m, a);
      if (!r) {
        out += " - | - |";
        continue;
      }
      const double gas = static_cast<double>(r->median_gas);
      out += format(" %.2f | %s |", gas / 1e6,
                    money(fee_usd(gas, gas_price_gwei, usd_per_eth)).c_str());
    }
    out += "\n";
  }
  return out;
}

std::string render_gas_per_char_table(std::span<const BenchRecord> records) {
  require_records(records);
  const RecordIndex idx(records);
  const std::size_t m = idx.ms.count(16) ? 16 : *idx.ms.begin();
  std::string out = format("Gas usage per text character, m = %zu\n\n| Set | n |", m);
  for (Algorithm a : idx.algorithms) {
    out += format(" %s |", std::string(algorithm_display_name(a)).c_str());
  }
  out += "\n|---|---|";
  for (std::size_t i = 0; i < idx.algorithms.size(); ++i) out += "---:|";
  out += "\n";
  for (const auto& c : idx.corpora) {
    for (std::size_t n : idx.ns) {
      out += format("| %s | %s |", c.c_str(), size_label(n).c_str());
      for (Algorithm a : idx.algorithms) {
        const BenchRecord* r = idx.find(c, n, m, a);
        out += r ? format(" %.2f |", gas_per_char(*r)) : std::string(" - |");
      }
      out += "\n";
    }
  }
  return out;
}

std::string render_time_table(std::span<const BenchRecord> records) {
  return render_by_m_table(records, "Median search time (seconds)",
                           [](const BenchRecord& r) { return r.median_time_s; });
}

std::string render_gas_table(std::span<const BenchRecord> records) {
  return render_by_m_table(records, "Median gas usage (millions)", [](const BenchRecord& r) {
    return static_cast<double>(r.median_gas) / 1e6;
  });
}

std::string render_fit_report(const GasTimeFit& fit) {
  return format("gas = %.6g * seconds + %.6g (least squares, %zu points)\n"
                "cost of one second of execution: %s\n",
                fit.slope, fit.intercept, fit.points, money(fit.usd_per_second).c_str());
}

void write_tables(const std::filesystem::path& dir, std::span<const BenchRecord> records,
                  double gas_price_gwei, double usd_per_eth) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_file_atomic(dir / "table1_gas_fee.md",
                    render_fee_table(records, gas_price_gwei, usd_per_eth));
  write_file_atomic(dir / "table2_gas_per_char.md", render_gas_per_char_table(records));
  write_file_atomic(dir / "table3_time.md", render_time_table(records));
  write_file_atomic(dir / "table4_gas.md", render_gas_table(records));
}

}  // namespace gasmatch
