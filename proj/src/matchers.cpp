#include "gasmatch/matchers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <stdexcept>
#include <string>

namespace gasmatch {

namespace {

constexpr std::array<std::string_view, 7> kNames = {"naive", "kmp", "bmh", "rk",
                                                    "so",    "bndm", "stringutils"};
constexpr std::array<std::string_view, 7> kDisplayNames = {
    "Naive", "KMP", "BMH", "RK", "SO", "BNDM", "StringUtils"};

constexpr std::uint64_t kDigestBase = 0x100000001b3ULL;

std::uint64_t fmix64(std::uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

void require_pattern(ByteView pattern) {
  if (pattern.empty()) throw std::invalid_argument("pattern must be non-empty");
}

void report(SearchOutcome& out, GasMeter& meter, std::size_t pos) {
  // Append to the result array and bump its length.
  meter.charge(Op::table_write);
  meter.charge(Op::arith);
  out.positions.push_back(pos);
}

/// Common wrapper: validation, m > n short-circuit, out-of-gas capture,
/// gas/time/instrumentation bookkeeping.
template <class Body>
SearchOutcome run_search(ByteView text, ByteView pattern, GasMeter& meter, Body&& body) {
  require_pattern(pattern);
  SearchOutcome out;
  const Gas gas_before = meter.consumed();
  const std::uint64_t cmp_before = meter.comparisons();
  const auto tallies_before = meter.tallies();
  const auto start = std::chrono::steady_clock::now();
  if (pattern.size() <= text.size()) {
    try {
      meter.charge(Op::call);
      const MeteredText t(text, meter);
      const MeteredText p(pattern, meter);
      body(t, p, out);
    } catch (const OutOfGas&) {
      out.out_of_gas = true;
      out.positions.clear();
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  out.wall_time_s = std::chrono::duration<double>(stop - start).count();
  out.gas_used = meter.consumed() - gas_before;
  out.comparisons = meter.comparisons() - cmp_before;
  for (std::size_t k = 0; k < kOpCount; ++k) {
    out.op_tallies[k] = meter.tallies()[k] - tallies_before[k];
  }
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
  return kNames[static_cast<std::size_t>(a)];
}

std::string_view algorithm_display_name(Algorithm a) noexcept {
  return kDisplayNames[static_cast<std::size_t>(a)];
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (lower == kNames[i]) return static_cast<Algorithm>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Preprocessing

KmpTable build_kmp_table(const MeteredText& pattern) {
  require_pattern(pattern.bytes());
  GasMeter& meter = pattern.meter();
  const std::size_t m = pattern.size();
  KmpTable table(m, 0);
  meter.charge(Op::table_write);
  std::size_t k = 0;
  for (std::size_t j = 1; j < m; ++j) {
    meter.charge(Op::branch);
    const std::uint8_t pj = pattern.read_byte(j);
    while (true) {
      meter.charge(Op::branch);
      const std::uint8_t pk = pattern.read_byte(k);
      meter.charge(Op::arith);
      if (pj == pk) {
        ++k;
        meter.charge(Op::arith);
        break;
      }
      if (k == 0) break;
      meter.charge(Op::table_read);
      k = table[k - 1];
    }
    meter.charge(Op::table_write);
    table[j] = k;
  }
  return table;
}

BmhTable build_bmh_table(const MeteredText& pattern) {
  require_pattern(pattern.bytes());
  GasMeter& meter = pattern.meter();
  const std::size_t m = pattern.size();
  BmhTable t;
  for (auto& s : t.shift) {
    meter.charge(Op::branch);
    meter.charge(Op::table_write);
    s = m;
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    meter.charge(Op::branch);
    const std::uint8_t c = pattern.read_byte(j);
    meter.charge(Op::arith);
    meter.charge(Op::table_write);
    t.shift[c] = m - 1 - j;
  }
  return t;
}

BitMaskTable build_so_masks(const MeteredText& pattern) {
  require_pattern(pattern.bytes());
  GasMeter& meter = pattern.meter();
  BitMaskTable t;
  t.bits = std::min(pattern.size(), kWordBits);
  for (auto& mask : t.masks) {
    meter.charge(Op::branch);
    meter.charge(Op::table_write);
    mask = WideWord::ones();
  }
  for (std::size_t j = 0; j < t.bits; ++j) {
    meter.charge(Op::branch);
    const std::uint8_t c = pattern.read_byte(j);
    meter.charge(Op::table_read);
    meter.charge(Op::shift);
    meter.charge(Op::arith, 2);  // not, and
    meter.charge(Op::table_write);
    t.masks[c] = t.masks[c] & ~shift_left(WideWord{1}, j);
  }
  return t;
}

BndmMasks build_bndm_masks(const MeteredText& pattern) {
  require_pattern(pattern.bytes());
  GasMeter& meter = pattern.meter();
  BndmMasks t;
  t.bits = pattern.size();
  t.width = (t.bits + kWordBits - 1) / kWordBits;
  t.words.assign(256 * t.width, WideWord{});
  // Fresh EVM memory is already zero; only the pattern bytes cost anything.
  for (std::size_t j = 0; j < t.bits; ++j) {
    meter.charge(Op::branch);
    const std::uint8_t c = pattern.read_byte(t.bits - 1 - j);
    meter.charge(Op::table_read);
    meter.charge(Op::shift);
    meter.charge(Op::arith);
    meter.charge(Op::table_write);
    t.words[c * t.width + j / kWordBits].set_bit(j % kWordBits);
  }
  return t;
}

namespace {

template <class Build>
auto build_unmetered(ByteView pattern, Build&& build) {
  const GasSchedule schedule;
  GasMeter meter(schedule);
  return build(MeteredText(pattern, meter));
}

}  // namespace

KmpTable build_kmp_table(ByteView pattern) {
  return build_unmetered(pattern, [](const MeteredText& p) { return build_kmp_table(p); });
}
BmhTable build_bmh_table(ByteView pattern) {
  return build_unmetered(pattern, [](const MeteredText& p) { return build_bmh_table(p); });
}
BitMaskTable build_so_masks(ByteView pattern) {
  return build_unmetered(pattern, [](const MeteredText& p) { return build_so_masks(p); });
}
BndmMasks build_bndm_masks(ByteView pattern) {
  return build_unmetered(pattern, [](const MeteredText& p) { return build_bndm_masks(p); });
}

bool verify_occurrence(const MeteredText& text, const MeteredText& pattern, std::size_t i) {
  GasMeter& meter = text.meter();
  const std::size_t m = pattern.size();
  for (std::size_t j = 0; j < m; ++j) {
    meter.charge(Op::branch);
    const std::uint8_t a = text.read_byte(i + j);
    const std::uint8_t b = pattern.read_byte(j);
    meter.compare_chars();
    if (a != b) return false;
    meter.charge(Op::arith);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Searchers

SearchOutcome search_naive(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(text, pattern, meter,
                    [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
                      const std::size_t n = t.size();
                      const std::size_t m = p.size();
                      for (std::size_t i = 0; i + m <= n; ++i) {
                        meter.charge(Op::branch);
                        ++out.window_alignments;
                        std::size_t j = 0;
                        while (j < m) {
                          meter.charge(Op::branch);
                          const std::uint8_t a = t.read_byte(i + j);
                          const std::uint8_t b = p.read_byte(j);
                          meter.compare_chars();
                          if (a != b) break;
                          meter.charge(Op::arith);
                          ++j;
                        }
                        if (j == m) report(out, meter, i);
                        meter.charge(Op::arith);
                      }
                    });
}

SearchOutcome search_kmp(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(
      text, pattern, meter, [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
        const KmpTable next = build_kmp_table(p);
        const std::size_t n = t.size();
        const std::size_t m = p.size();
        std::size_t q = 0;  // matched prefix length
        std::size_t last_start = n;
        for (std::size_t i = 0; i < n; ++i) {
          meter.charge(Op::branch);
          const std::uint8_t c = t.read_byte(i);
          while (true) {
            meter.charge(Op::branch);
            const std::size_t start = i - q;
            if (start != last_start && start + m <= n) {
              ++out.window_alignments;
              last_start = start;
            }
            const std::uint8_t pc = p.read_byte(q);
            meter.compare_chars();
            if (c == pc) {
              meter.charge(Op::arith);
              ++q;
              break;
            }
            if (q == 0) break;
            meter.charge(Op::table_read);
            q = next[q - 1];
          }
          if (q == m) {
            report(out, meter, i + 1 - m);
            meter.charge(Op::table_read);
            q = next[m - 1];
          }
          meter.charge(Op::arith);
        }
      });
}

SearchOutcome search_bmh(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(text, pattern, meter,
                    [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
                      const BmhTable table = build_bmh_table(p);
                      const std::size_t n = t.size();
                      const std::size_t m = p.size();
                      std::size_t pos = 0;
                      while (pos + m <= n) {
                        meter.charge(Op::branch);
                        ++out.window_alignments;
                        const std::uint8_t last = t.read_byte(pos + m - 1);
                        // Right to left; the window's last byte is compared first.
                        std::size_t j = m - 1;
                        std::uint8_t a = last;
                        while (true) {
                          meter.charge(Op::branch);
                          const std::uint8_t b = p.read_byte(j);
                          meter.compare_chars();
                          if (a != b) break;
                          if (j == 0) {
                            report(out, meter, pos);
                            break;
                          }
                          meter.charge(Op::arith);
                          --j;
                          a = t.read_byte(pos + j);
                        }
                        meter.charge(Op::table_read);
                        meter.charge(Op::arith);
                        pos += table.shift[last];
                      }
                    });
}

WideWord rabin_karp_hash(ByteView window) {
  const WideWord base{kRabinKarpBase};
  WideWord h;
  for (std::uint8_t c : window) h = wrapping_mul_add(h, base, WideWord{c});
  return h;
}

SearchOutcome search_rk(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(
      text, pattern, meter, [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
        const std::size_t n = t.size();
        const std::size_t m = p.size();
        const WideWord base{kRabinKarpBase};

        WideWord high_power{1};  // base^(m-1)
        for (std::size_t j = 1; j < m; ++j) {
          meter.charge(Op::branch);
          meter.charge(Op::mul_div);
          high_power = wrapping_mul(high_power, base);
        }
        WideWord pattern_hash;
        WideWord window_hash;
        for (std::size_t j = 0; j < m; ++j) {
          meter.charge(Op::branch);
          const std::uint8_t pc = p.read_byte(j);
          const std::uint8_t tc = t.read_byte(j);
          meter.charge(Op::mul_div, 2);
          meter.charge(Op::arith, 2);
          pattern_hash = wrapping_mul_add(pattern_hash, base, WideWord{pc});
          window_hash = wrapping_mul_add(window_hash, base, WideWord{tc});
        }

        for (std::size_t i = 0; i + m <= n; ++i) {
          meter.charge(Op::branch);
          ++out.window_alignments;
          meter.charge(Op::arith);
          if (window_hash == pattern_hash) {
            ++out.candidates;
            if (verify_occurrence(t, p, i)) report(out, meter, i);
          }
          if (i + m < n) {
            const std::uint8_t leaving = t.read_byte(i);
            const std::uint8_t entering = t.read_byte(i + m);
            meter.charge(Op::mul_div, 2);
            meter.charge(Op::arith, 2);
            window_hash = wrapping_mul_add(
                wrapping_sub(window_hash, wrapping_mul(WideWord{leaving}, high_power)), base,
                WideWord{entering});
          }
          meter.charge(Op::arith);
        }
      });
}

SearchOutcome search_so(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(
      text, pattern, meter, [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
        const BitMaskTable table = build_so_masks(p);
        const std::size_t n = t.size();
        const std::size_t m = p.size();
        const std::size_t probe = table.bits - 1;
        const bool exact = m <= kWordBits;
        WideWord state = WideWord::ones();
        for (std::size_t i = 0; i < n; ++i) {
          meter.charge(Op::branch);
          const std::uint8_t c = t.read_byte(i);
          meter.charge(Op::table_read);
          meter.charge(Op::shift);
          meter.charge(Op::arith);
          state = shift_left(state, 1) | table.masks[c];
          ++out.state_updates;
          meter.charge(Op::arith);
          if (!state.test_bit(probe)) {
            const std::size_t start = i - probe;
            if (exact) {
              report(out, meter, start);
            } else if (start + m <= n) {
              ++out.candidates;
              if (verify_occurrence(t, p, start)) report(out, meter, start);
            }
          }
          meter.charge(Op::arith);
        }
        out.window_alignments = n - m + 1;
      });
}

SearchOutcome search_bndm(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(
      text, pattern, meter, [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
        const BndmMasks table = build_bndm_masks(p);
        const std::size_t n = t.size();
        const std::size_t m = p.size();
        const std::size_t width = table.width;
        const std::size_t top_word = (m - 1) / kWordBits;
        const std::size_t top_bit = (m - 1) % kWordBits;
        std::vector<WideWord> state(width);
        std::size_t pos = 0;
        while (pos + m <= n) {
          meter.charge(Op::branch);
          ++out.window_alignments;
          std::size_t j = m;
          std::size_t last = m;
          std::fill(state.begin(), state.end(), WideWord::ones());
          while (j > 0) {
            meter.charge(Op::branch);
            const std::uint8_t c = t.read_byte(pos + j - 1);
            meter.charge(Op::table_read);
            meter.charge(Op::arith, width + 1);  // and per word, decrement
            const WideWord* mask = table.row(c);
            bool alive = false;
            for (std::size_t w = 0; w < width; ++w) {
              state[w] = state[w] & mask[w];
              alive = alive || !state[w].is_zero();
            }
            ++out.state_updates;
            --j;
            meter.charge(Op::arith, width);
            if (!alive) break;
            meter.charge(Op::arith);
            if (state[top_word].test_bit(top_bit)) {
              if (j > 0) {
                last = j;
              } else {
                report(out, meter, pos);
              }
            }
            // Multi-word shift: each word takes the top bit of the one below.
            meter.charge(Op::shift, 2 * width - 1);
            meter.charge(Op::arith, width - 1);
            for (std::size_t w = width; w-- > 0;) {
              WideWord shifted = shift_left(state[w], 1);
              if (w > 0) shifted = shifted | shift_right(state[w - 1], kWordBits - 1);
              state[w] = shifted;
            }
          }
          meter.charge(Op::arith);
          pos += last;
        }
      });
}

std::uint64_t window_digest(ByteView window) noexcept {
  std::uint64_t h = 0;
  for (std::uint8_t c : window) h = h * kDigestBase + c;
  return fmix64(h);
}

SearchOutcome search_stringutils(ByteView text, ByteView pattern, GasMeter& meter) {
  return run_search(
      text, pattern, meter, [&](const MeteredText& t, const MeteredText& p, SearchOutcome& out) {
        const std::size_t n = t.size();
        const std::size_t m = p.size();
        const std::size_t last_start = n - m;

        if (m <= WideWord::kBytes) {
          // Pack the needle into one word and compare masked text words.
          meter.charge(Op::shift);
          meter.charge(Op::arith, 2);
          const WideWord mask = WideWord::high_byte_mask(m);
          meter.charge(Op::arith);
          const WideWord needle = p.load_word(0) & mask;
          for (std::size_t i = 0; i <= last_start; ++i) {
            meter.charge(Op::branch);
            ++out.window_alignments;
            meter.charge(Op::arith);
            const WideWord window = t.load_word(i) & mask;
            meter.compare_chars();
            if (window == needle) report(out, meter, i);
            meter.charge(Op::arith, 2);  // ptr >= end, ptr++
          }
          return;
        }

        // Long needle: hash it once, then hash every window.
        meter.charge_keccak(m);
        const ByteView raw = t.bytes();
        const std::uint64_t needle_raw = [&] {
          std::uint64_t h = 0;
          for (std::uint8_t c : p.bytes()) h = h * kDigestBase + c;
          return h;
        }();
        const std::uint64_t needle_digest = fmix64(needle_raw);
        std::uint64_t high_power = 1;
        for (std::size_t j = 1; j < m; ++j) high_power *= kDigestBase;
        std::uint64_t window_raw = 0;
        for (std::size_t j = 0; j < m; ++j) window_raw = window_raw * kDigestBase + raw[j];

        for (std::size_t i = 0; i <= last_start; ++i) {
          meter.charge(Op::branch);
          ++out.window_alignments;
          meter.charge(Op::arith, 2);  // selflen - needlelen, idx <= bound
          meter.charge_keccak(m);
          meter.charge(Op::arith);
          if (fmix64(window_raw) == needle_digest) {
            ++out.candidates;
            if (verify_occurrence(t, p, i)) report(out, meter, i);
          }
          meter.charge(Op::arith, 2);  // idx++, ptr++
          if (i < last_start) {
            window_raw = (window_raw - raw[i] * high_power) * kDigestBase + raw[i + m];
          }
        }
      });
}

SearchOutcome search(Algorithm a, ByteView text, ByteView pattern, GasMeter& meter) {
  switch (a) {
    case Algorithm::naive: return search_naive(text, pattern, meter);
    case Algorithm::kmp: return search_kmp(text, pattern, meter);
    case Algorithm::bmh: return search_bmh(text, pattern, meter);
    case Algorithm::rk: return search_rk(text, pattern, meter);
    case Algorithm::so: return search_so(text, pattern, meter);
    case Algorithm::bndm: return search_bndm(text, pattern, meter);
    case Algorithm::stringutils: return search_stringutils(text, pattern, meter);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace gasmatch
