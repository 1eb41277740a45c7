#include "gasmatch/gasmatch.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "gasmatch/bench.hpp"
#include "gasmatch/config.hpp"
#include "gasmatch/corpus.hpp"
#include "gasmatch/gas.hpp"
#include "gasmatch/matchers.hpp"

struct gm_schedule {
  gasmatch::GasSchedule schedule;
};

struct gm_outcome {
  gasmatch::SearchOutcome outcome;
  std::vector<std::uint64_t> positions;
};

struct gm_bench_config {
  gasmatch::BenchConfig config;
};

struct gm_bench_results {
  std::vector<gasmatch::BenchRecord> records;
};

namespace {

thread_local std::string g_last_error;

gm_status fail(gm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs `fn`, mapping exceptions onto status codes.
template <class Fn>
gm_status guarded(Fn&& fn) noexcept {
  try {
    return fn();
  } catch (const gasmatch::OutOfGas& e) {
    return fail(GM_ERR_OUT_OF_GAS, e.what());
  } catch (const gasmatch::IoError& e) {
    return fail(GM_ERR_IO, e.what());
  } catch (const gasmatch::DegenerateFit& e) {
    return fail(GM_ERR_DEGENERATE_FIT, e.what());
  } catch (const gasmatch::ConfigError& e) {
    return fail(GM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GM_ERR_INTERNAL, "unknown error");
  }
}

bool valid_algorithm(gm_algorithm a) {
  return static_cast<int>(a) >= 0 && static_cast<int>(a) < GM_ALGORITHM_COUNT;
}

gm_status copy_out(const void* src, std::size_t len, std::uint8_t** data, std::size_t* out_len) {
  auto* buf = static_cast<std::uint8_t*>(std::malloc(len == 0 ? 1 : len));
  if (!buf) return fail(GM_ERR_INTERNAL, "out of memory");
  if (len != 0) std::memcpy(buf, src, len);
  *data = buf;
  *out_len = len;
  return GM_OK;
}

const gasmatch::GasSchedule& default_schedule() {
  static const gasmatch::GasSchedule schedule;
  return schedule;
}

}  // namespace

extern "C" {

const char* gm_last_error(void) { return g_last_error.c_str(); }

const char* gm_status_string(gm_status status) {
  switch (status) {
    case GM_OK: return "ok";
    case GM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GM_ERR_IO: return "i/o error";
    case GM_ERR_OUT_OF_GAS: return "out of gas";
    case GM_ERR_DEGENERATE_FIT: return "degenerate fit";
    case GM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gm_algorithm_name(gm_algorithm algorithm) {
  if (!valid_algorithm(algorithm)) return "";
  return gasmatch::algorithm_name(static_cast<gasmatch::Algorithm>(algorithm)).data();
}

const char* gm_algorithm_display_name(gm_algorithm algorithm) {
  if (!valid_algorithm(algorithm)) return "";
  return gasmatch::algorithm_display_name(static_cast<gasmatch::Algorithm>(algorithm)).data();
}

gm_status gm_algorithm_from_name(const char* name, gm_algorithm* out) {
  if (!name || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  const auto a = gasmatch::algorithm_from_name(name);
  if (!a) return fail(GM_ERR_INVALID_ARGUMENT, std::string("unknown algorithm `") + name + "`");
  *out = static_cast<gm_algorithm>(*a);
  return GM_OK;
}

// ---------------------------------------------------------------------------

gm_status gm_schedule_create(gm_schedule** out) {
  if (!out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new gm_schedule{};
    return GM_OK;
  });
}

gm_status gm_schedule_load_file(const char* path, gm_schedule** out) {
  if (!path || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new gm_schedule{gasmatch::GasSchedule::load_file(path)};
    return GM_OK;
  });
}

gm_status gm_schedule_set(gm_schedule* schedule, const char* key, uint64_t cost) {
  if (!schedule || !key) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  const auto op = gasmatch::op_from_key(key);
  if (!op) return fail(GM_ERR_INVALID_ARGUMENT, std::string("unknown schedule key `") + key + "`");
  schedule->schedule.set(*op, cost);
  return GM_OK;
}

gm_status gm_schedule_get(const gm_schedule* schedule, const char* key, uint64_t* out) {
  if (!schedule || !key || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  const auto op = gasmatch::op_from_key(key);
  if (!op) return fail(GM_ERR_INVALID_ARGUMENT, std::string("unknown schedule key `") + key + "`");
  *out = schedule->schedule.cost(*op);
  return GM_OK;
}

void gm_schedule_destroy(gm_schedule* schedule) { delete schedule; }

uint64_t gm_keccak_cost(const gm_schedule* schedule, size_t length) {
  return (schedule ? schedule->schedule : default_schedule()).keccak_cost(length);
}

uint64_t gm_calldata_cost(const gm_schedule* schedule, size_t text_len, size_t pattern_len) {
  return (schedule ? schedule->schedule : default_schedule()).calldata_cost(text_len, pattern_len);
}

// ---------------------------------------------------------------------------

gm_status gm_search(gm_algorithm algorithm, const uint8_t* text, size_t text_len,
                    const uint8_t* pattern, size_t pattern_len, const gm_schedule* schedule,
                    uint64_t gas_limit, gm_outcome** out) {
  if (!out || (!text && text_len) || (!pattern && pattern_len)) {
    return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (!valid_algorithm(algorithm)) return fail(GM_ERR_INVALID_ARGUMENT, "unknown algorithm");
  return guarded([&] {
    const auto& sched = schedule ? schedule->schedule : default_schedule();
    gasmatch::GasMeter meter(sched, gas_limit);
    auto result = std::make_unique<gm_outcome>();
    result->outcome = gasmatch::search(static_cast<gasmatch::Algorithm>(algorithm),
                                       gasmatch::ByteView(text, text_len),
                                       gasmatch::ByteView(pattern, pattern_len), meter);
    result->positions.assign(result->outcome.positions.begin(), result->outcome.positions.end());
    const bool oog = result->outcome.out_of_gas;
    *out = result.release();
    return oog ? fail(GM_ERR_OUT_OF_GAS, "out of gas") : GM_OK;
  });
}

size_t gm_outcome_count(const gm_outcome* o) { return o ? o->positions.size() : 0; }
const uint64_t* gm_outcome_positions(const gm_outcome* o) {
  return o ? o->positions.data() : nullptr;
}
uint64_t gm_outcome_gas_used(const gm_outcome* o) { return o ? o->outcome.gas_used : 0; }
uint64_t gm_outcome_comparisons(const gm_outcome* o) { return o ? o->outcome.comparisons : 0; }
uint64_t gm_outcome_window_alignments(const gm_outcome* o) {
  return o ? o->outcome.window_alignments : 0;
}
uint64_t gm_outcome_state_updates(const gm_outcome* o) {
  return o ? o->outcome.state_updates : 0;
}
uint64_t gm_outcome_candidates(const gm_outcome* o) { return o ? o->outcome.candidates : 0; }
double gm_outcome_wall_time(const gm_outcome* o) { return o ? o->outcome.wall_time_s : 0.0; }
int gm_outcome_out_of_gas(const gm_outcome* o) { return o && o->outcome.out_of_gas ? 1 : 0; }
void gm_outcome_destroy(gm_outcome* o) { delete o; }

// ---------------------------------------------------------------------------

gm_status gm_corpus_generate(const char* kind, size_t n, uint64_t seed, uint8_t** data,
                             size_t* len) {
  if (!kind || !data || !len) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  const auto k = gasmatch::corpus_kind_from_name(kind);
  if (!k || *k == gasmatch::CorpusKind::file) {
    return fail(GM_ERR_INVALID_ARGUMENT, std::string("unknown corpus kind `") + kind + "`");
  }
  return guarded([&] {
    const auto bytes = gasmatch::generate({*k, n, seed, {}});
    return copy_out(bytes.data(), bytes.size(), data, len);
  });
}

gm_status gm_corpus_load_file(const char* path, size_t n, uint8_t** data, size_t* len) {
  if (!path || !data || !len) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto bytes = gasmatch::load_file(path, n);
    return copy_out(bytes.data(), bytes.size(), data, len);
  });
}

gm_status gm_read_file(const char* path, uint8_t** data, size_t* len) {
  if (!path || !data || !len) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto contents = gasmatch::read_file(path);
    return copy_out(contents.data(), contents.size(), data, len);
  });
}

gm_status gm_write_file(const char* path, const uint8_t* data, size_t len) {
  if (!path || (!data && len)) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    gasmatch::write_file_atomic(
        path, std::string_view(reinterpret_cast<const char*>(data), len));
    return GM_OK;
  });
}

void gm_buffer_free(void* buffer) { std::free(buffer); }

// ---------------------------------------------------------------------------

gm_status gm_bench_config_create(gm_bench_config** out) {
  if (!out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new gm_bench_config{};
    return GM_OK;
  });
}

gm_status gm_bench_config_load_file(const char* path, gm_bench_config** out) {
  if (!path || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new gm_bench_config{gasmatch::BenchConfig::load_file(path)};
    return GM_OK;
  });
}

gm_status gm_bench_config_set(gm_bench_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const gasmatch::ConfigEntry entry{key, value, 0};
    auto updated = config->config;
    updated.apply(std::span(&entry, 1));
    updated.validate();
    config->config = std::move(updated);
    return GM_OK;
  });
}

void gm_bench_config_destroy(gm_bench_config* config) { delete config; }

gm_status gm_bench_run(const gm_bench_config* config, gm_bench_results** out) {
  if (!config || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new gm_bench_results{gasmatch::run_matrix(config->config)};
    return GM_OK;
  });
}

gm_status gm_bench_results_load_csv(const char* path, gm_bench_results** out) {
  if (!path || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new gm_bench_results{gasmatch::parse_csv(gasmatch::read_file(path))};
    return GM_OK;
  });
}

size_t gm_bench_results_count(const gm_bench_results* results) {
  return results ? results->records.size() : 0;
}

int gm_bench_results_out_of_gas(const gm_bench_results* results) {
  if (!results) return 0;
  for (const auto& r : results->records) {
    if (r.out_of_gas) return 1;
  }
  return 0;
}

gm_status gm_bench_results_get(const gm_bench_results* results, size_t index, gm_record* out) {
  if (!results || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= results->records.size()) return fail(GM_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& r = results->records[index];
  out->corpus = r.corpus.c_str();
  out->algorithm = static_cast<gm_algorithm>(r.algorithm);
  out->n = r.n;
  out->m = r.m;
  out->median_gas = r.median_gas;
  out->median_time_s = r.median_time_s;
  out->fee_usd = r.fee_usd;
  out->gas_per_char = r.gas_per_char;
  out->out_of_gas = r.out_of_gas ? 1 : 0;
  return GM_OK;
}

gm_status gm_bench_results_write_csv(const gm_bench_results* results, const char* path) {
  if (!results || !path) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    gasmatch::write_file_atomic(path, gasmatch::to_csv(results->records));
    return GM_OK;
  });
}

gm_status gm_bench_results_write_tables(const gm_bench_results* results, const char* dir,
                                        double gas_price_gwei, double usd_per_eth) {
  if (!results || !dir) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    gasmatch::write_tables(dir, results->records, gas_price_gwei, usd_per_eth);
    return GM_OK;
  });
}

void gm_bench_results_destroy(gm_bench_results* results) { delete results; }

// ---------------------------------------------------------------------------

gm_status gm_report_render(const gm_bench_results* results, gm_report_kind kind,
                           double gas_price_gwei, double usd_per_eth, char** text) {
  if (!results || !text) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string s;
    switch (kind) {
      case GM_REPORT_FEES:
        s = gasmatch::render_fee_table(results->records, gas_price_gwei, usd_per_eth);
        break;
      case GM_REPORT_GAS_PER_CHAR: s = gasmatch::render_gas_per_char_table(results->records); break;
      case GM_REPORT_TIME: s = gasmatch::render_time_table(results->records); break;
      case GM_REPORT_GAS: s = gasmatch::render_gas_table(results->records); break;
      case GM_REPORT_FIT:
        s = gasmatch::render_fit_report(
            gasmatch::fit_gas_time(results->records, gas_price_gwei, usd_per_eth));
        break;
      default: return fail(GM_ERR_INVALID_ARGUMENT, "unknown report kind");
    }
    std::uint8_t* buf = nullptr;
    std::size_t len = 0;
    // NUL-terminated copy.
    s.push_back('\0');
    if (const auto st = copy_out(s.data(), s.size(), &buf, &len); st != GM_OK) return st;
    *text = reinterpret_cast<char*>(buf);
    return GM_OK;
  });
}

double gm_fee_usd(double gas, double gas_price_gwei, double usd_per_eth) {
  return gasmatch::fee_usd(gas, gas_price_gwei, usd_per_eth);
}

gm_status gm_fit_gas_time(const gm_bench_results* results, double gas_price_gwei,
                          double usd_per_eth, gm_fit* out) {
  if (!results || !out) return fail(GM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto fit = gasmatch::fit_gas_time(results->records, gas_price_gwei, usd_per_eth);
    *out = gm_fit{fit.slope, fit.intercept, fit.usd_per_second, fit.points};
    return GM_OK;
  });
}

}  // extern "C"
