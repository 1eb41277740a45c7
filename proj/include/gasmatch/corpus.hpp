#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gasmatch {

using Bytes = std::vector<std::uint8_t>;

enum class CorpusKind : std::uint8_t { dna, proteins, english, sources, file };

std::string_view corpus_kind_name(CorpusKind k) noexcept;
std::optional<CorpusKind> corpus_kind_from_name(std::string_view name) noexcept;

struct CorpusSpec {
  CorpusKind kind = CorpusKind::dna;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::filesystem::path path;  // kind == file only

  /// Label used in reports: the kind name, or the file's stem.
  std::string label() const;
};

/// Text of exactly spec.n bytes, a pure function of (kind, n, seed) for the
/// synthetic kinds:
///   dna       uniform over ACGT
///   proteins  uniform over the 20 amino-acid letters
///   english   words drawn from fixed letter and word-length frequency
///             tables, separated by spaces, with sentence punctuation
///   sources   C-like lines: indentation, repeated keywords, identifiers,
///             operators, literals drawn from printable ASCII
/// For kind == file the first n bytes of spec.path are returned.
/// The generator is std::mt19937_64 seeded with `seed`; bounded draws use the
/// multiply-high reduction so the stream does not depend on the standard
/// library's distribution implementations.
/// Throws std::invalid_argument for n == 0, IoError for unreadable files.
Bytes generate(const CorpusSpec& spec);

/// First n bytes of the file. Throws IoError if it cannot be read or is
/// shorter than n.
Bytes load_file(const std::filesystem::path& path, std::size_t n);

/// `count` substrings of length m at uniformly drawn start offsets.
/// Throws std::invalid_argument if m == 0, m > text.size(), or count == 0.
std::vector<Bytes> sample_patterns(const Bytes& text, std::size_t m, std::size_t count,
                                   std::uint64_t seed);

/// Same draws as sample_patterns, returning the offsets only.
std::vector<std::size_t> sample_offsets(std::size_t n, std::size_t m, std::size_t count,
                                        std::uint64_t seed);

}  // namespace gasmatch
