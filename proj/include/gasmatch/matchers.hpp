#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gasmatch/gas.hpp"
#include "gasmatch/wideword.hpp"

namespace gasmatch {

enum class Algorithm : std::uint8_t { naive, kmp, bmh, rk, so, bndm, stringutils };

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::naive, Algorithm::kmp, Algorithm::bmh,        Algorithm::rk,
    Algorithm::so,    Algorithm::bndm, Algorithm::stringutils,
};

/// Lower-case identifier used on the command line and in CSV files.
std::string_view algorithm_name(Algorithm a) noexcept;
/// Name as printed in report tables ("BMH", "StringUtils", ...).
std::string_view algorithm_display_name(Algorithm a) noexcept;
/// Case-insensitive; accepts both forms above.
std::optional<Algorithm> algorithm_from_name(std::string_view name) noexcept;
/// Everything except the naive scan builds a table, mask set, or hash first.
constexpr bool has_preprocessing(Algorithm a) noexcept { return a != Algorithm::naive; }

/// Shift-Or handles this many pattern bytes natively; longer patterns are
/// searched by prefix and verified.
inline constexpr std::size_t kWordBits = WideWord::kBits;

struct SearchOutcome {
  /// Start offsets of every occurrence, strictly increasing.
  std::vector<std::size_t> positions;
  Gas gas_used = 0;
  /// Explicit byte-vs-byte (or packed word) equality tests during the search.
  std::uint64_t comparisons = 0;
  std::uint64_t window_alignments = 0;
  /// Bit-parallel state updates (Shift-Or, BNDM).
  std::uint64_t state_updates = 0;
  /// Hash or prefix hits handed to verify_occurrence.
  std::uint64_t candidates = 0;
  double wall_time_s = 0.0;
  /// Set when the meter ran out; positions are then empty.
  bool out_of_gas = false;
  std::array<std::uint64_t, kOpCount> op_tallies{};
};

/// Longest proper prefix-suffix length of P[0..j] for every j.
using KmpTable = std::vector<std::size_t>;

struct BmhTable {
  std::array<std::size_t, 256> shift{};
};

/// Shift-Or masks: bit j of masks[P[j]] is clear for j < bits = min(m, 256).
struct BitMaskTable {
  std::array<WideWord, 256> masks{};
  std::size_t bits = 0;
};

/// BNDM masks over the whole pattern: bit j of row P[m-1-j] is set for every
/// j < m. Each row spans `width` = ceil(m / 256) words, least significant first.
struct BndmMasks {
  std::vector<WideWord> words;
  std::size_t bits = 0;
  std::size_t width = 0;

  const WideWord* row(std::uint8_t c) const noexcept { return words.data() + c * width; }
  bool test_bit(std::uint8_t c, std::size_t j) const noexcept {
    return row(c)[j / WideWord::kBits].test_bit(j % WideWord::kBits);
  }
};

// Preprocessing. Each builder charges the pattern's meter. Throws
// std::invalid_argument for an empty pattern.
KmpTable build_kmp_table(const MeteredText& pattern);
BmhTable build_bmh_table(const MeteredText& pattern);
BitMaskTable build_so_masks(const MeteredText& pattern);
BndmMasks build_bndm_masks(const MeteredText& pattern);

// Unmetered conveniences (charged against a throwaway meter).
KmpTable build_kmp_table(ByteView pattern);
BmhTable build_bmh_table(ByteView pattern);
BitMaskTable build_so_masks(ByteView pattern);
BndmMasks build_bndm_masks(ByteView pattern);

/// True iff pattern occurs at text offset `i`. Stops at the first mismatch;
/// one comparison is counted per examined byte.
bool verify_occurrence(const MeteredText& text, const MeteredText& pattern, std::size_t i);

// Searchers. All report every (overlapping) occurrence. An empty pattern
// throws std::invalid_argument; m > n yields an empty outcome. Running out of
// gas does not throw: the outcome carries out_of_gas and no positions.
SearchOutcome search_naive(ByteView text, ByteView pattern, GasMeter& meter);
SearchOutcome search_kmp(ByteView text, ByteView pattern, GasMeter& meter);
SearchOutcome search_bmh(ByteView text, ByteView pattern, GasMeter& meter);
SearchOutcome search_rk(ByteView text, ByteView pattern, GasMeter& meter);
SearchOutcome search_so(ByteView text, ByteView pattern, GasMeter& meter);
SearchOutcome search_bndm(ByteView text, ByteView pattern, GasMeter& meter);
SearchOutcome search_stringutils(ByteView text, ByteView pattern, GasMeter& meter);

SearchOutcome search(Algorithm a, ByteView text, ByteView pattern, GasMeter& meter);

/// Rabin-Karp window hash: sum of T[i+j] * 257^(m-1-j) mod 2^256.
inline constexpr std::uint64_t kRabinKarpBase = 257;
WideWord rabin_karp_hash(ByteView window);

/// Window digest used by the long-pattern StringUtils path in place of the
/// keccak256 output (gas is still charged at keccak rates):
///   fmix64( sum of w[j] * 0x100000001b3^(m-1-j) mod 2^64 )
/// where fmix64 is the MurmurHash3 finalizer.
std::uint64_t window_digest(ByteView window) noexcept;

}  // namespace gasmatch
