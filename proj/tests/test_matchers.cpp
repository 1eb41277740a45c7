#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <string>

#include "gasmatch/matchers.hpp"
#include "oracle.hpp"

using namespace gasmatch;
using oracle::bytes;
using Positions = std::vector<std::size_t>;

namespace {

const GasSchedule kSchedule;

SearchOutcome run(Algorithm a, const std::vector<std::uint8_t>& t,
                  const std::vector<std::uint8_t>& p, Gas limit = kUnlimitedGas) {
  GasMeter meter(kSchedule, limit);
  return search(a, t, p, meter);
}

std::string label(Algorithm a) { return std::string(algorithm_name(a)); }

}  // namespace

TEST_CASE("algorithm names") {
  for (Algorithm a : kAllAlgorithms) {
    CHECK(algorithm_from_name(algorithm_name(a)) == a);
    CHECK(algorithm_from_name(algorithm_display_name(a)) == a);
  }
  CHECK_FALSE(algorithm_from_name("boyer-moore").has_value());
  CHECK_FALSE(has_preprocessing(Algorithm::naive));
  CHECK(has_preprocessing(Algorithm::bmh));
}

TEST_CASE("naive") {
  CHECK(run(Algorithm::naive, bytes("aaaa"), bytes("aa")).positions == Positions{0, 1, 2});
  CHECK(run(Algorithm::naive, bytes("abc"), bytes("d")).positions.empty());
  const auto o = run(Algorithm::naive, bytes("abcdef"), bytes("cd"));
  CHECK(o.window_alignments == 5);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto t = oracle::random_text(rng, 1024, 4);
    const std::size_t m = 1 + rng() % 6;
    const std::size_t at = rng() % (t.size() - m);
    const std::vector<std::uint8_t> p(t.begin() + at, t.begin() + at + m);
    const auto out = run(Algorithm::naive, t, p);
    CHECK(out.positions == oracle::find_all(t, p));
    CHECK(out.window_alignments == t.size() - m + 1);
  }
}

TEST_CASE("kmp table") {
  // Frozen from the enumeration oracle.
  CHECK(oracle::prefix_suffix(bytes("aaaa")) == Positions{0, 1, 2, 3});
  CHECK(oracle::prefix_suffix(bytes("abcabd")) == Positions{0, 0, 0, 1, 2, 0});

  CHECK(build_kmp_table(ByteView(bytes("aaaa"))) == KmpTable{0, 1, 2, 3});
  CHECK(build_kmp_table(ByteView(bytes("abcabd"))) == KmpTable{0, 0, 0, 1, 2, 0});
  CHECK(build_kmp_table(ByteView(bytes("z"))) == KmpTable{0});
  CHECK_THROWS_AS(build_kmp_table(ByteView{}), std::invalid_argument);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto p = oracle::random_text(rng, 1 + rng() % 40, 2 + rng() % 3);
    const auto table = build_kmp_table(ByteView(p));
    CHECK(table == oracle::prefix_suffix(p));
    CHECK(table[0] == 0);
    for (std::size_t j = 1; j < table.size(); ++j) CHECK(table[j] < j + 1);
  }
}

TEST_CASE("kmp search") {
  CHECK(run(Algorithm::kmp, bytes("ababab"), bytes("abab")).positions == Positions{0, 2});

  const auto same = bytes("abracadabra");
  const auto o = run(Algorithm::kmp, same, same);
  CHECK(o.positions == Positions{0});
  CHECK(o.comparisons == same.size());

  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const unsigned sigma = 2 + rng() % 3;
    const auto t = oracle::random_text(rng, 1 + rng() % 2000, sigma);
    const auto p = oracle::random_text(rng, 1 + rng() % 8, sigma);
    const auto out = run(Algorithm::kmp, t, p);
    CHECK(out.positions == oracle::find_all(t, p));
    if (p.size() <= t.size()) CHECK(out.comparisons <= 2 * t.size() - 1);
  }
}

TEST_CASE("bmh table") {
  const auto t = build_bmh_table(ByteView(bytes("example")));
  CHECK(t.shift['e'] == 6);
  CHECK(t.shift['x'] == 5);
  CHECK(t.shift['a'] == 4);
  CHECK(t.shift['m'] == 3);
  CHECK(t.shift['p'] == 2);
  CHECK(t.shift['l'] == 1);
  for (int c = 0; c < 256; ++c) {
    if (std::string("exampl").find(static_cast<char>(c)) == std::string::npos) {
      CHECK(t.shift[c] == 7);
    }
  }
  const auto aa = build_bmh_table(ByteView(bytes("aa")));
  CHECK(aa.shift['a'] == 1);
  CHECK(aa.shift['b'] == 2);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_text(rng, 1 + rng() % 100, 256);
    const auto table = build_bmh_table(ByteView(p));
    for (std::size_t s : table.shift) {
      CHECK(s >= 1);
      CHECK(s <= p.size());
    }
  }
}

TEST_CASE("bmh search") {
  CHECK(run(Algorithm::bmh, bytes("aaaa"), bytes("aa")).positions == Positions{0, 1, 2});

  // Pattern bytes absent from the text: every shift is m.
  const std::vector<std::uint8_t> text(10000, 'x');
  for (std::size_t m : {1u, 3u, 16u, 100u, 512u}) {
    const std::vector<std::uint8_t> p(m, 'y');
    const auto o = run(Algorithm::bmh, text, p);
    const std::size_t n = text.size();
    CHECK(o.window_alignments == (n - m) / m + 1);
    CHECK(o.window_alignments <= (n - m + 1 + m - 1) / m + 1);
  }
}

TEST_CASE("rabin-karp") {
  const auto t = bytes("hello world");
  CHECK(run(Algorithm::rk, t, t).positions == Positions{0});
  CHECK(run(Algorithm::rk, bytes("aaaa"), bytes("aa")).positions == Positions{0, 1, 2});

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto text = oracle::random_text(rng, 1 + rng() % 3000, 2 + rng() % 20);
    const auto p = oracle::random_text(rng, 1 + rng() % 50, 2);
    CHECK(run(Algorithm::rk, text, p).positions == oracle::find_all(text, p));
  }
}

TEST_CASE("rabin-karp rejects engineered hash collisions") {
  // Thue-Morse word and its complement over {A, B}: their hash difference is
  // +-prod_{i<17} (257^(2^i) - 1), whose 2-adic valuation is 8 + sum(8+i, i=1..16)
  // = 272 >= 256, so the two windows collide modulo 2^256.
  constexpr std::size_t kLen = std::size_t{1} << 17;
  std::vector<std::uint8_t> tm(kLen);
  std::vector<std::uint8_t> complement(kLen);
  for (std::size_t i = 0; i < kLen; ++i) {
    const bool bit = (__builtin_popcountll(i) & 1) != 0;
    tm[i] = bit ? 'B' : 'A';
    complement[i] = bit ? 'A' : 'B';
  }

  // Independent confirmation with arbitrary precision.
  using boost::multiprecision::cpp_int;
  const cpp_int mod = cpp_int(1) << 256;
  auto big_hash = [&](const std::vector<std::uint8_t>& w) {
    cpp_int h = 0;
    for (std::uint8_t c : w) h = (h * 257 + c) % mod;
    return h;
  };
  REQUIRE(big_hash(tm) == big_hash(complement));
  REQUIRE(tm != complement);
  CHECK(rabin_karp_hash(tm) == rabin_karp_hash(complement));

  // Text holds only the colliding window: a hash hit, but no occurrence.
  const auto miss = run(Algorithm::rk, complement, tm);
  CHECK(miss.candidates == 1);
  CHECK(miss.positions.empty());

  // Both windows present: only the true one is reported.
  std::vector<std::uint8_t> text = complement;
  text.insert(text.end(), tm.begin(), tm.end());
  const auto hit = run(Algorithm::rk, text, tm);
  CHECK(hit.positions == oracle::find_all(text, tm));
  CHECK(hit.positions == Positions{kLen});
  CHECK(hit.candidates >= 2);
}

TEST_CASE("bit-parallel masks") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_text(rng, 1 + rng() % 400, 2 + rng() % 255);
    const auto so = build_so_masks(ByteView(p));
    const auto bndm = build_bndm_masks(ByteView(p));
    const std::size_t bits = std::min<std::size_t>(p.size(), 256);
    CHECK(so.bits == bits);
    for (std::size_t j = 0; j < bits; ++j) CHECK_FALSE(so.masks[p[j]].test_bit(j));
    CHECK(bndm.bits == p.size());
    CHECK(bndm.width == (p.size() + 255) / 256);
    for (std::size_t j = 0; j < p.size(); ++j) CHECK(bndm.test_bit(p[p.size() - 1 - j], j));
    // Nothing else is set.
    std::size_t set = 0;
    for (int c = 0; c < 256; ++c) {
      for (std::size_t j = 0; j < p.size(); ++j) set += bndm.test_bit(static_cast<std::uint8_t>(c), j);
    }
    CHECK(set == p.size());
  }
}

TEST_CASE("shift-or search") {
  CHECK(run(Algorithm::so, bytes("cabd"), bytes("ab")).positions == Positions{1});
  CHECK(run(Algorithm::so, bytes("aaaa"), bytes("aa")).positions == Positions{0, 1, 2});

  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto t = oracle::random_text(rng, 1 + rng() % 3000, 2 + rng() % 4);
    const auto p = oracle::random_text(rng, 1 + rng() % 10, 2);
    const auto o = run(Algorithm::so, t, p);
    CHECK(o.positions == oracle::find_all(t, p));
    if (p.size() <= t.size()) CHECK(o.state_updates == t.size());
  }
}

TEST_CASE("shift-or long pattern verifies prefix candidates") {
  std::mt19937_64 rng(29);
  auto p = oracle::random_text(rng, 300, 20);
  // Text contains the 256-byte prefix followed by a wrong tail, then the
  // real pattern.
  std::vector<std::uint8_t> t = oracle::random_text(rng, 100, 20);
  t.reserve(1000);
  const std::size_t decoy = t.size();
  t.insert(t.end(), p.begin(), p.begin() + 256);
  auto tail = std::vector<std::uint8_t>(p.begin() + 256, p.end());
  tail[10] = static_cast<std::uint8_t>(tail[10] ^ 0x80);
  t.insert(t.end(), tail.begin(), tail.end());
  const std::size_t real = t.size();
  t.insert(t.end(), p.begin(), p.end());
  const auto pad = oracle::random_text(rng, 50, 20);
  t.insert(t.end(), pad.begin(), pad.end());

  const auto so = run(Algorithm::so, t, p);
  CHECK(so.positions == oracle::find_all(t, p));
  CHECK(so.positions == Positions{real});
  CHECK(so.candidates >= 2);  // the decoy and the real one
  CHECK(run(Algorithm::bndm, t, p).positions == Positions{real});
  CHECK(oracle::find_all(t, std::span(p).first(256)).front() == decoy);
  CHECK(run(Algorithm::so, t, p).state_updates == t.size());
}

TEST_CASE("shift-or gas depends only on n, m and the occurrence count") {
  std::mt19937_64 rng(31);
  const std::size_t n = 4096;
  std::optional<Gas> gas;
  for (unsigned sigma : {2u, 4u, 20u, 96u, 256u}) {
    // A pattern that cannot occur: one byte outside the text alphabet.
    auto t = oracle::random_text(rng, n, sigma);
    for (auto& b : t) b = static_cast<std::uint8_t>(b & 0x7f);
    auto p = oracle::random_text(rng, 16, sigma);
    for (auto& b : p) b = static_cast<std::uint8_t>(b & 0x7f);
    p.back() = 0xff;
    const auto o = run(Algorithm::so, t, p);
    REQUIRE(o.positions.empty());
    if (gas) CHECK(o.gas_used == *gas);
    gas = o.gas_used;
  }
}

TEST_CASE("bndm search") {
  CHECK(run(Algorithm::bndm, bytes("aaaa"), bytes("aa")).positions == Positions{0, 1, 2});

  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const auto t = oracle::random_text(rng, 1 + rng() % 3000, 2 + rng() % 4);
    const auto p = oracle::random_text(rng, 1 + rng() % 300, 2);
    CHECK(run(Algorithm::bndm, t, p).positions == oracle::find_all(t, p));
  }

  const std::vector<std::uint8_t> text(20000, 'x');
  for (std::size_t m : {1u, 2u, 31u, 256u, 300u, 512u}) {
    const std::vector<std::uint8_t> p(m, 'y');
    const auto o = run(Algorithm::bndm, text, p);
    const std::size_t n = text.size();
    // Every shift is a full pattern length.
    CHECK(o.window_alignments == (n - m) / m + 1);
    CHECK(o.window_alignments <= (n - m + 1 + m - 1) / m + 1);
  }
}

TEST_CASE("stringutils") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto t = oracle::random_text(rng, 1 + rng() % 3000, 2 + rng() % 3);
    const auto p = oracle::random_text(rng, 1 + rng() % 70, 2);
    CHECK(run(Algorithm::stringutils, t, p).positions == oracle::find_all(t, p));
  }
  CHECK(run(Algorithm::stringutils, bytes("xxABCDyyABCD"), bytes("ABCD")).positions ==
        Positions{2, 8});
}

TEST_CASE("stringutils per-window gas jumps past 32 bytes by at least keccak_cost") {
  // Same text, patterns that never occur; the difference between two text
  // sizes isolates the per-window cost from the one-off setup.
  auto per_window = [](std::size_t m) {
    const std::vector<std::uint8_t> p(m, 'y');
    const std::vector<std::uint8_t> t1(1000, 'x');
    const std::vector<std::uint8_t> t2(3000, 'x');
    const auto a = run(Algorithm::stringutils, t1, p);
    const auto b = run(Algorithm::stringutils, t2, p);
    return static_cast<double>(b.gas_used - a.gas_used) / 2000.0;
  };
  const double w32 = per_window(32);
  const double w64 = per_window(64);
  CHECK(w64 - w32 >= static_cast<double>(kSchedule.keccak_cost(64)));
  CHECK(per_window(16) == w32);
}

TEST_CASE("verify_occurrence") {
  GasMeter meter(kSchedule);
  const auto t = bytes("xxabcxx");
  const auto p = bytes("abc");
  const MeteredText text(t, meter);
  const MeteredText pat(p, meter);
  CHECK(verify_occurrence(text, pat, 2));
  CHECK(meter.comparisons() == 3);
  CHECK_FALSE(verify_occurrence(text, pat, 0));
  CHECK(meter.comparisons() == 4);

  std::mt19937_64 rng(43);
  const auto rt = oracle::random_text(rng, 500, 2);
  for (int i = 0; i < 200; ++i) {
    const auto rp = oracle::random_text(rng, 1 + rng() % 5, 2);
    const std::size_t at = rng() % (rt.size() - rp.size() + 1);
    const MeteredText a(rt, meter);
    const MeteredText b(rp, meter);
    const auto expected = oracle::find_all(std::span(rt).subspan(at, rp.size()), rp);
    CHECK(verify_occurrence(a, b, at) == !expected.empty());
  }
}

TEST_CASE("edge cases shared by all searchers") {
  for (Algorithm a : kAllAlgorithms) {
    CAPTURE(label(a));
    // m > n: empty, no error, no gas.
    const auto longer = run(a, bytes("abc"), bytes("abcd"));
    CHECK(longer.positions.empty());
    CHECK_FALSE(longer.out_of_gas);
    // m == 0 is rejected.
    GasMeter meter(kSchedule);
    CHECK_THROWS_AS(search(a, ByteView(bytes("abc")), ByteView{}, meter), std::invalid_argument);
    // Single byte.
    CHECK(run(a, bytes("a"), bytes("a")).positions == Positions{0});
    CHECK(run(a, bytes("banana"), bytes("a")).positions == Positions{1, 3, 5});
    CHECK(run(a, bytes("banana"), bytes("ana")).positions == Positions{1, 3});
  }
}

TEST_CASE("cross-algorithm agreement") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 150; ++i) {
    const unsigned sigma = std::array<unsigned, 5>{2, 4, 20, 96, 256}[rng() % 5];
    const auto t = oracle::random_text(rng, 1 + rng() % 4000, sigma);
    std::vector<std::uint8_t> p;
    if (rng() % 2 == 0 && t.size() > 1) {
      const std::size_t m = 1 + rng() % std::min<std::size_t>(t.size(), 400);
      const std::size_t at = rng() % (t.size() - m + 1);
      p.assign(t.begin() + at, t.begin() + at + m);
    } else {
      p = oracle::random_text(rng, 1 + rng() % 6, sigma);
    }
    const auto expected = oracle::find_all(t, p);
    for (Algorithm a : kAllAlgorithms) {
      CAPTURE(label(a));
      const auto o = run(a, t, p);
      CHECK(o.positions == expected);
      CHECK(std::is_sorted(o.positions.begin(), o.positions.end()));
    }
  }
}

TEST_CASE("out of gas aborts cleanly") {
  std::mt19937_64 rng(53);
  const auto t = oracle::random_text(rng, 2000, 4);
  const std::vector<std::uint8_t> p(t.begin() + 100, t.begin() + 108);
  for (Algorithm a : kAllAlgorithms) {
    CAPTURE(label(a));
    const Gas full = run(a, t, p).gas_used;
    for (Gas limit : {Gas{0}, Gas{10}, full / 2, full - 1}) {
      const auto o = run(a, t, p, limit);
      CHECK(o.out_of_gas);
      CHECK(o.positions.empty());
      CHECK(o.gas_used <= limit);
    }
    const auto exact = run(a, t, p, full);
    CHECK_FALSE(exact.out_of_gas);
    CHECK(exact.positions == oracle::find_all(t, p));
  }
}

TEST_CASE("gas is deterministic") {
  std::mt19937_64 rng(59);
  const auto t = oracle::random_text(rng, 5000, 20);
  const auto p = oracle::random_text(rng, 40, 20);
  for (Algorithm a : kAllAlgorithms) {
    const auto x = run(a, t, p);
    const auto y = run(a, t, p);
    CHECK(x.gas_used == y.gas_used);
    CHECK(x.op_tallies == y.op_tallies);
    Gas dot = 0;
    for (std::size_t k = 0; k < kOpCount; ++k) dot += x.op_tallies[k] * kSchedule.cost(static_cast<Op>(k));
    CHECK(dot == x.gas_used);
  }
}
