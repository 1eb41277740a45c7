#include "gasmatch/corpus.hpp"

#include <array>
#include <fstream>
#include <random>
#include <stdexcept>

#include "gasmatch/config.hpp"

namespace gasmatch {

namespace {

constexpr std::array<std::string_view, 5> kKindNames = {"dna", "proteins", "english", "sources",
                                                       "file"};

__extension__ using u128 = unsigned __int128;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<u128>(engine_()) * bound) >> 64);
  }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Draws an index with probability proportional to its weight.
template <std::size_t N>
class WeightedTable {
 public:
  constexpr explicit WeightedTable(const std::array<std::uint32_t, N>& weights) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < N; ++i) {
      acc += weights[i];
      cumulative_[i] = acc;
    }
  }
  std::size_t draw(Rng& rng) const {
    const std::uint64_t r = rng.below(cumulative_[N - 1]);
    std::size_t i = 0;
    while (cumulative_[i] <= r) ++i;
    return i;
  }

 private:
  std::array<std::uint64_t, N> cumulative_{};
};

// English letter frequencies, per 10'000.
constexpr std::string_view kLetters = "etaoinshrdlcumwfgypbvkjxqz";
constexpr std::array<std::uint32_t, 26> kLetterWeights = {
    1270, 906, 817, 751, 697, 675, 633, 609, 599, 425, 403, 278, 276,
    241,  236, 223, 202, 197, 193, 149, 98,  77,  15,  15,  10,  7,
};
// Word lengths 1..12.
constexpr std::array<std::uint32_t, 12> kWordLengthWeights = {3, 17, 21, 16, 11, 9,
                                                              8, 6,  4,  3,  1,  1};

constexpr std::array<std::string_view, 24> kKeywords = {
    "int",    "return", "if",     "else",   "for",      "while",  "const",   "struct",
    "static", "void",   "char",   "unsigned", "sizeof", "break",  "case",    "switch",
    "#include", "#define", "NULL", "typedef", "size_t", "double", "continue", "default",
};
constexpr std::string_view kOperators = "=+-*/%<>!&|^~?:;,.()[]";

void append(Bytes& out, std::string_view s) { out.insert(out.end(), s.begin(), s.end()); }

Bytes uniform_text(std::size_t n, std::uint64_t seed, std::string_view alphabet) {
  Rng rng(seed);
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(alphabet[rng.below(alphabet.size())]);
  return out;
}

Bytes english_text(std::size_t n, std::uint64_t seed) {
  static const WeightedTable letters(kLetterWeights);
  static const WeightedTable lengths(kWordLengthWeights);
  Rng rng(seed);
  Bytes out;
  out.reserve(n + 64);
  while (out.size() < n) {
    const std::uint64_t sentences = rng.between(3, 6);
    for (std::uint64_t s = 0; s < sentences && out.size() < n; ++s) {
      const std::uint64_t words = rng.between(6, 20);
      for (std::uint64_t w = 0; w < words; ++w) {
        const std::size_t len = lengths.draw(rng) + 1;
        for (std::size_t k = 0; k < len; ++k) {
          auto c = static_cast<std::uint8_t>(kLetters[letters.draw(rng)]);
          if (w == 0 && k == 0) c = static_cast<std::uint8_t>(c - 'a' + 'A');
          out.push_back(c);
        }
        if (w + 1 == words) {
          out.push_back('.');
        } else if (rng.chance(1, 16)) {
          out.push_back(',');
        }
        out.push_back(' ');
      }
    }
    out.back() = '\n';
  }
  out.resize(n);
  return out;
}

Bytes sources_text(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  // A fixed identifier pool gives the repetition real code has.
  std::vector<std::string> identifiers;
  for (int i = 0; i < 48; ++i) {
    std::string id;
    const std::uint64_t len = rng.between(2, 10);
    for (std::uint64_t k = 0; k < len; ++k) {
      const std::uint64_t r = rng.below(40);
      if (r < 26) {
        id.push_back(static_cast<char>('a' + r));
      } else if (r < 32) {
        id.push_back('_');
      } else if (k > 0) {
        id.push_back(static_cast<char>('0' + (r - 32)));
      } else {
        id.push_back(static_cast<char>('A' + rng.below(26)));
      }
    }
    identifiers.push_back(std::move(id));
  }

  Bytes out;
  out.reserve(n + 256);
  std::size_t depth = 0;
  while (out.size() < n) {
    if (depth > 0 && rng.chance(1, 6)) {
      --depth;
      out.insert(out.end(), depth * 4, ' ');
      append(out, "}\n");
      continue;
    }
    out.insert(out.end(), depth * 4, ' ');
    if (rng.chance(1, 10)) {
      append(out, "/* ");
      const std::uint64_t words = rng.between(2, 8);
      for (std::uint64_t w = 0; w < words; ++w) {
        append(out, identifiers[rng.below(identifiers.size())]);
        out.push_back(' ');
      }
      append(out, "*/\n");
      continue;
    }
    const std::uint64_t tokens = rng.between(2, 8);
    for (std::uint64_t t = 0; t < tokens; ++t) {
      const std::uint64_t kind = rng.below(100);
      if (kind < 30) {
        append(out, kKeywords[rng.below(kKeywords.size())]);
      } else if (kind < 65) {
        append(out, identifiers[rng.below(identifiers.size())]);
      } else if (kind < 75) {
        append(out, std::to_string(rng.below(rng.chance(1, 4) ? 65536 : 16)));
      } else if (kind < 94) {
        out.push_back(static_cast<std::uint8_t>(kOperators[rng.below(kOperators.size())]));
      } else {
        // String literal: the long tail of printable ASCII.
        out.push_back('"');
        const std::uint64_t len = rng.between(2, 14);
        for (std::uint64_t k = 0; k < len; ++k) {
          std::uint8_t c = static_cast<std::uint8_t>(rng.between(32, 126));
          if (c == '"' || c == '\\') c = '_';
          out.push_back(c);
        }
        out.push_back('"');
      }
      if (t + 1 < tokens) out.push_back(' ');
    }
    if (depth < 5 && rng.chance(1, 5)) {
      append(out, " {\n");
      ++depth;
    } else {
      append(out, ";\n");
    }
  }
  out.resize(n);
  return out;
}

}  // namespace

std::string_view corpus_kind_name(CorpusKind k) noexcept {
  return kKindNames[static_cast<std::size_t>(k)];
}

std::optional<CorpusKind> corpus_kind_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (name == kKindNames[i]) return static_cast<CorpusKind>(i);
  }
  return std::nullopt;
}

std::string CorpusSpec::label() const {
  if (kind == CorpusKind::file) return path.stem().string();
  return std::string(corpus_kind_name(kind));
}

Bytes generate(const CorpusSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("corpus size must be at least 1 byte");
  switch (spec.kind) {
    case CorpusKind::dna: return uniform_text(spec.n, spec.seed, "ACGT");
    case CorpusKind::proteins: return uniform_text(spec.n, spec.seed, "ACDEFGHIKLMNPQRSTVWY");
    case CorpusKind::english: return english_text(spec.n, spec.seed);
    case CorpusKind::sources: return sources_text(spec.n, spec.seed);
    case CorpusKind::file: return load_file(spec.path, spec.n);
  }
  throw std::invalid_argument("unknown corpus kind");
}

Bytes load_file(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes out(n);
  in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw IoError(path.string() + " has fewer than " + std::to_string(n) + " bytes");
  }
  return out;
}

std::vector<std::size_t> sample_offsets(std::size_t n, std::size_t m, std::size_t count,
                                        std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("pattern length must be at least 1");
  if (m > n) throw std::invalid_argument("pattern length exceeds text length");
  if (count == 0) throw std::invalid_argument("pattern count must be at least 1");
  Rng rng(seed);
  std::vector<std::size_t> offsets(count);
  for (auto& o : offsets) o = static_cast<std::size_t>(rng.below(n - m + 1));
  return offsets;
}

std::vector<Bytes> sample_patterns(const Bytes& text, std::size_t m, std::size_t count,
                                   std::uint64_t seed) {
  std::vector<Bytes> patterns;
  patterns.reserve(count);
  for (std::size_t o : sample_offsets(text.size(), m, count, seed)) {
    patterns.emplace_back(text.begin() + static_cast<std::ptrdiff_t>(o),
                          text.begin() + static_cast<std::ptrdiff_t>(o + m));
  }
  return patterns;
}

}  // namespace gasmatch
