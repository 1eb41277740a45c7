#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "gasmatch/gasmatch.h"

namespace {

const uint8_t* u8(const char* s) { return reinterpret_cast<const uint8_t*>(s); }

}  // namespace

TEST_CASE("names and statuses") {
  CHECK(std::string(gm_algorithm_name(GM_ALG_BMH)) == "bmh");
  CHECK(std::string(gm_algorithm_display_name(GM_ALG_STRINGUTILS)) == "StringUtils");
  gm_algorithm a{};
  CHECK(gm_algorithm_from_name("BNDM", &a) == GM_OK);
  CHECK(a == GM_ALG_BNDM);
  CHECK(gm_algorithm_from_name("nope", &a) == GM_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(gm_last_error()) > 0);
  CHECK(gm_algorithm_from_name(nullptr, &a) == GM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gm_status_string(GM_ERR_OUT_OF_GAS)).size() > 0);
}

TEST_CASE("schedule") {
  gm_schedule* s = nullptr;
  REQUIRE(gm_schedule_create(&s) == GM_OK);
  uint64_t v = 0;
  CHECK(gm_schedule_get(s, "branch_overhead", &v) == GM_OK);
  CHECK(v == 10);
  CHECK(gm_schedule_set(s, "keccak_per_word", 8) == GM_OK);
  CHECK(gm_keccak_cost(s, 64) == 30 + 16);
  CHECK(gm_keccak_cost(nullptr, 64) == 42);
  CHECK(gm_calldata_cost(nullptr, 1024, 16) == 5200);
  CHECK(gm_schedule_set(s, "warp_drive", 1) == GM_ERR_INVALID_ARGUMENT);
  CHECK(gm_schedule_get(s, "warp_drive", &v) == GM_ERR_INVALID_ARGUMENT);
  gm_schedule_destroy(s);

  gm_schedule* missing = nullptr;
  CHECK(gm_schedule_load_file("/nonexistent/schedule.cfg", &missing) == GM_ERR_IO);
  CHECK(missing == nullptr);
}

TEST_CASE("search") {
  for (int k = 0; k < GM_ALGORITHM_COUNT; ++k) {
    gm_outcome* o = nullptr;
    REQUIRE(gm_search(static_cast<gm_algorithm>(k), u8("abababa"), 7, u8("aba"), 3, nullptr,
                      GM_GAS_UNLIMITED, &o) == GM_OK);
    REQUIRE(gm_outcome_count(o) == 3);
    CHECK(gm_outcome_positions(o)[0] == 0);
    CHECK(gm_outcome_positions(o)[1] == 2);
    CHECK(gm_outcome_positions(o)[2] == 4);
    CHECK(gm_outcome_gas_used(o) > 0);
    CHECK(gm_outcome_out_of_gas(o) == 0);
    CHECK(gm_outcome_wall_time(o) >= 0.0);
    gm_outcome_destroy(o);
  }

  gm_outcome* o = nullptr;
  CHECK(gm_search(GM_ALG_KMP, u8("abababa"), 7, u8("aba"), 3, nullptr, 20, &o) ==
        GM_ERR_OUT_OF_GAS);
  REQUIRE(o != nullptr);
  CHECK(gm_outcome_out_of_gas(o) == 1);
  CHECK(gm_outcome_count(o) == 0);
  CHECK(gm_outcome_gas_used(o) <= 20);
  gm_outcome_destroy(o);

  o = nullptr;
  CHECK(gm_search(GM_ALG_KMP, u8("abc"), 3, u8(""), 0, nullptr, GM_GAS_UNLIMITED, &o) ==
        GM_ERR_INVALID_ARGUMENT);
  CHECK(o == nullptr);
  CHECK(gm_search(static_cast<gm_algorithm>(42), u8("abc"), 3, u8("a"), 1, nullptr,
                  GM_GAS_UNLIMITED, &o) == GM_ERR_INVALID_ARGUMENT);
  CHECK(gm_search(GM_ALG_KMP, u8("abc"), 3, u8("a"), 1, nullptr, GM_GAS_UNLIMITED, nullptr) ==
        GM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("corpora and files") {
  uint8_t* data = nullptr;
  size_t len = 0;
  REQUIRE(gm_corpus_generate("dna", 100, 1, &data, &len) == GM_OK);
  CHECK(len == 100);
  const auto path = (std::filesystem::temp_directory_path() / "gasmatch_capi.txt").string();
  CHECK(gm_write_file(path.c_str(), data, len) == GM_OK);

  uint8_t* back = nullptr;
  size_t back_len = 0;
  REQUIRE(gm_read_file(path.c_str(), &back, &back_len) == GM_OK);
  CHECK(back_len == 100);
  CHECK(std::memcmp(back, data, 100) == 0);
  gm_buffer_free(back);

  REQUIRE(gm_corpus_load_file(path.c_str(), 10, &back, &back_len) == GM_OK);
  CHECK(back_len == 10);
  CHECK(std::memcmp(back, data, 10) == 0);
  gm_buffer_free(back);
  CHECK(gm_corpus_load_file(path.c_str(), 101, &back, &back_len) == GM_ERR_IO);

  gm_buffer_free(data);
  std::filesystem::remove(path);
  CHECK(gm_corpus_generate("klingon", 100, 1, &data, &len) == GM_ERR_INVALID_ARGUMENT);
  CHECK(gm_corpus_generate("dna", 0, 1, &data, &len) == GM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bench") {
  gm_bench_config* c = nullptr;
  REQUIRE(gm_bench_config_create(&c) == GM_OK);
  CHECK(gm_bench_config_set(c, "corpora", "dna") == GM_OK);
  CHECK(gm_bench_config_set(c, "n", "1024,4096") == GM_OK);
  CHECK(gm_bench_config_set(c, "m", "4,16") == GM_OK);
  CHECK(gm_bench_config_set(c, "patterns", "3") == GM_OK);
  CHECK(gm_bench_config_set(c, "patterns", "4") == GM_ERR_INVALID_ARGUMENT);
  CHECK(gm_bench_config_set(c, "bogus", "1") == GM_ERR_INVALID_ARGUMENT);

  gm_bench_results* r = nullptr;
  REQUIRE(gm_bench_run(c, &r) == GM_OK);
  CHECK(gm_bench_results_count(r) == 2 * 2 * 7);
  CHECK(gm_bench_results_out_of_gas(r) == 0);
  gm_record rec{};
  REQUIRE(gm_bench_results_get(r, 0, &rec) == GM_OK);
  CHECK(std::string(rec.corpus) == "dna");
  CHECK(rec.n == 1024);
  CHECK(rec.median_gas > 0);
  CHECK(rec.fee_usd == doctest::Approx(gm_fee_usd(static_cast<double>(rec.median_gas), 25, 1250)));
  CHECK(gm_bench_results_get(r, 1000, &rec) == GM_ERR_INVALID_ARGUMENT);

  char* text = nullptr;
  REQUIRE(gm_report_render(r, GM_REPORT_GAS_PER_CHAR, 25, 1250, &text) == GM_OK);
  CHECK(std::string(text).find("m = 16") != std::string::npos);
  gm_buffer_free(text);

  const auto csv = (std::filesystem::temp_directory_path() / "gasmatch_capi.csv").string();
  REQUIRE(gm_bench_results_write_csv(r, csv.c_str()) == GM_OK);
  gm_bench_results* loaded = nullptr;
  REQUIRE(gm_bench_results_load_csv(csv.c_str(), &loaded) == GM_OK);
  CHECK(gm_bench_results_count(loaded) == gm_bench_results_count(r));
  gm_record rec2{};
  REQUIRE(gm_bench_results_get(loaded, 5, &rec2) == GM_OK);
  REQUIRE(gm_bench_results_get(r, 5, &rec) == GM_OK);
  CHECK(rec2.median_gas == rec.median_gas);
  gm_bench_results_destroy(loaded);
  std::filesystem::remove(csv);

  gm_fit fit{};
  const gm_status fs = gm_fit_gas_time(r, 25, 1250, &fit);
  CHECK((fs == GM_OK || fs == GM_ERR_DEGENERATE_FIT));
  if (fs == GM_OK) CHECK(fit.points == 28);

  gm_bench_results_destroy(r);
  gm_bench_config_destroy(c);

  CHECK(gm_bench_results_load_csv("/nonexistent.csv", &loaded) == GM_ERR_IO);
  CHECK(gm_fee_usd(56.50e6, 25, 1250) == doctest::Approx(1765.625));
}
