#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "gasmatch/config.hpp"
#include "gasmatch/corpus.hpp"
#include "oracle.hpp"

using namespace gasmatch;

namespace {

bool only_from(const Bytes& text, std::string_view alphabet) {
  return std::all_of(text.begin(), text.end(), [&](std::uint8_t c) {
    return alphabet.find(static_cast<char>(c)) != std::string_view::npos;
  });
}

std::uint64_t fnv1a(const Bytes& b) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t c : b) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

}  // namespace

TEST_CASE("kind names") {
  for (auto k : {CorpusKind::dna, CorpusKind::proteins, CorpusKind::english, CorpusKind::sources,
                 CorpusKind::file}) {
    CHECK(corpus_kind_from_name(corpus_kind_name(k)) == k);
  }
  CHECK_FALSE(corpus_kind_from_name("klingon").has_value());
  CHECK(CorpusSpec{CorpusKind::file, 1, 0, "/tmp/abc/linux.txt"}.label() == "linux");
  CHECK(CorpusSpec{CorpusKind::dna}.label() == "dna");
}

TEST_CASE("generated text has the requested size and alphabet") {
  for (std::size_t n : {1u, 7u, 1000u, 65536u}) {
    CHECK(generate({CorpusKind::dna, n, 3}).size() == n);
    CHECK(generate({CorpusKind::proteins, n, 3}).size() == n);
    CHECK(generate({CorpusKind::english, n, 3}).size() == n);
    CHECK(generate({CorpusKind::sources, n, 3}).size() == n);
  }
  CHECK(only_from(generate({CorpusKind::dna, 5000, 1}), "ACGT"));
  CHECK(only_from(generate({CorpusKind::proteins, 5000, 1}), "ACDEFGHIKLMNPQRSTVWY"));

  const auto english = generate({CorpusKind::english, 20000, 1});
  CHECK(std::all_of(english.begin(), english.end(), [](std::uint8_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == ' ' || c == '.' ||
           c == ',' || c == '\n';
  }));
  CHECK(std::count(english.begin(), english.end(), ' ') > 2000);

  const auto sources = generate({CorpusKind::sources, 20000, 1});
  CHECK(std::all_of(sources.begin(), sources.end(),
                    [](std::uint8_t c) { return c == '\n' || (c >= 32 && c <= 126); }));
  const std::string s(sources.begin(), sources.end());
  CHECK(s.find("return") != std::string::npos);
  CHECK(s.find('{') != std::string::npos);

  CHECK_THROWS_AS(generate({CorpusKind::dna, 0, 1}), std::invalid_argument);
}

TEST_CASE("generation is a pure function of kind, n and seed") {
  for (auto k : {CorpusKind::dna, CorpusKind::proteins, CorpusKind::english, CorpusKind::sources}) {
    CHECK(generate({k, 4096, 9}) == generate({k, 4096, 9}));
    CHECK(generate({k, 4096, 9}) != generate({k, 4096, 10}));
  }
  // Frozen FNV-1a checksums guard against accidental stream changes.
  CHECK(fnv1a(generate({CorpusKind::dna, 4096, 1, {}})) == 0x4cd595a2cdd136d9ULL);
  CHECK(fnv1a(generate({CorpusKind::proteins, 4096, 1, {}})) == 0x69e9f9a79d8f9bceULL);
  CHECK(fnv1a(generate({CorpusKind::english, 4096, 1, {}})) == 0x98183ff40376955dULL);
  CHECK(fnv1a(generate({CorpusKind::sources, 4096, 1, {}})) == 0xdbfdaae8e370730bULL);
}

TEST_CASE("dna symbols are close to uniform") {
  const auto text = generate({CorpusKind::dna, 65536, 5});
  std::map<std::uint8_t, std::size_t> counts;
  for (auto c : text) ++counts[c];
  REQUIRE(counts.size() == 4);
  for (const auto& [c, count] : counts) {
    CHECK(std::abs(static_cast<double>(count) / text.size() - 0.25) < 0.02);
  }
}

TEST_CASE("load_file") {
  const auto path = std::filesystem::temp_directory_path() / "gasmatch_test_corpus.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "0123456789";
  }
  CHECK(load_file(path, 4) == oracle::bytes("0123"));
  CHECK(load_file(path, 10) == oracle::bytes("0123456789"));
  CHECK_THROWS_AS(load_file(path, 11), IoError);
  CHECK(generate({CorpusKind::file, 3, 0, path}) == oracle::bytes("012"));
  CHECK(load_file(path, 0).empty());

  // Fixture: bytes 0..255 four times; checksums computed independently.
  {
    std::ofstream out(path, std::ios::binary);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 256; ++c) out.put(static_cast<char>(c));
    }
  }
  CHECK(fnv1a(load_file(path, 1024)) == 0x1e5698f9d66e6f25ULL);
  CHECK(fnv1a(load_file(path, 512)) == 0x9432c6144eb04925ULL);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_file(path, 1), IoError);
}

TEST_CASE("sample_patterns") {
  const auto text = generate({CorpusKind::english, 5000, 2});
  const auto patterns = sample_patterns(text, 16, 11, 77);
  CHECK(patterns.size() == 11);
  for (const auto& p : patterns) {
    CHECK(p.size() == 16);
    CHECK_FALSE(oracle::find_all(text, p).empty());
  }
  CHECK(patterns == sample_patterns(text, 16, 11, 77));

  const auto offsets = sample_offsets(text.size(), 16, 11, 77);
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    CHECK(offsets[i] + 16 <= text.size());
    CHECK(Bytes(text.begin() + offsets[i], text.begin() + offsets[i] + 16) == patterns[i]);
  }
  // m == n: the only offset is 0.
  for (auto o : sample_offsets(10, 10, 5, 1)) CHECK(o == 0);

  CHECK_THROWS_AS(sample_patterns(text, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_patterns(text, 5001, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_patterns(text, 4, 0, 1), std::invalid_argument);
}
