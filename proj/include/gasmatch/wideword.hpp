#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace gasmatch {

/// 256-bit unsigned machine word.
///
/// Arithmetic wraps modulo 2^256. Limbs are stored least-significant first;
/// the byte-level view (from_bytes_be / to_bytes_be) is big-endian with short
/// inputs left-aligned, which is how the EVM packs a string into a word.
class WideWord {
 public:
  static constexpr std::size_t kBits = 256;
  static constexpr std::size_t kBytes = 32;
  static constexpr std::size_t kLimbs = 4;

  constexpr WideWord() noexcept = default;
  constexpr explicit WideWord(std::uint64_t low) noexcept : limbs_{low, 0, 0, 0} {}
  constexpr WideWord(std::uint64_t l3, std::uint64_t l2, std::uint64_t l1,
                     std::uint64_t l0) noexcept
      : limbs_{l0, l1, l2, l3} {}

  static constexpr WideWord zero() noexcept { return WideWord{}; }
  static constexpr WideWord ones() noexcept {
    return WideWord{~0ULL, ~0ULL, ~0ULL, ~0ULL};
  }

  /// Packs up to 32 bytes into the high-order end of the word; the remaining
  /// low bytes are zero. Throws std::invalid_argument when bytes.size() > 32.
  static WideWord from_bytes_be(std::span<const std::uint8_t> bytes);
  std::array<std::uint8_t, kBytes> to_bytes_be() const noexcept;

  /// Word with the top `count` bytes set to 0xff (count in 0..32).
  static WideWord high_byte_mask(std::size_t count);

  constexpr std::uint64_t limb(std::size_t i) const noexcept { return limbs_[i]; }

  bool test_bit(std::size_t i) const noexcept {
    return ((limbs_[i / 64] >> (i % 64)) & 1U) != 0;
  }
  WideWord& set_bit(std::size_t i) noexcept {
    limbs_[i / 64] |= std::uint64_t{1} << (i % 64);
    return *this;
  }
  bool is_zero() const noexcept {
    return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0;
  }
  /// Byte at big-endian position `i` (0 = most significant).
  std::uint8_t byte_be(std::size_t i) const noexcept {
    const std::size_t bit = (kBytes - 1 - i) * 8;
    return static_cast<std::uint8_t>(limbs_[bit / 64] >> (bit % 64));
  }

  std::string to_hex() const;

  friend WideWord shift_left(const WideWord& w, std::size_t k) noexcept;
  friend WideWord shift_right(const WideWord& w, std::size_t k) noexcept;
  friend WideWord wrapping_add(const WideWord& a, const WideWord& b) noexcept;
  friend WideWord wrapping_sub(const WideWord& a, const WideWord& b) noexcept;
  friend WideWord wrapping_mul(const WideWord& a, const WideWord& b) noexcept;

  friend constexpr WideWord operator&(const WideWord& a, const WideWord& b) noexcept {
    return WideWord{a.limbs_[3] & b.limbs_[3], a.limbs_[2] & b.limbs_[2],
                    a.limbs_[1] & b.limbs_[1], a.limbs_[0] & b.limbs_[0]};
  }
  friend constexpr WideWord operator|(const WideWord& a, const WideWord& b) noexcept {
    return WideWord{a.limbs_[3] | b.limbs_[3], a.limbs_[2] | b.limbs_[2],
                    a.limbs_[1] | b.limbs_[1], a.limbs_[0] | b.limbs_[0]};
  }
  friend constexpr WideWord operator^(const WideWord& a, const WideWord& b) noexcept {
    return WideWord{a.limbs_[3] ^ b.limbs_[3], a.limbs_[2] ^ b.limbs_[2],
                    a.limbs_[1] ^ b.limbs_[1], a.limbs_[0] ^ b.limbs_[0]};
  }
  friend constexpr WideWord operator~(const WideWord& a) noexcept {
    return WideWord{~a.limbs_[3], ~a.limbs_[2], ~a.limbs_[1], ~a.limbs_[0]};
  }
  friend constexpr bool operator==(const WideWord&, const WideWord&) noexcept = default;

 private:
  std::array<std::uint64_t, kLimbs> limbs_{};
};

WideWord shift_left(const WideWord& w, std::size_t k) noexcept;
WideWord shift_right(const WideWord& w, std::size_t k) noexcept;
WideWord wrapping_add(const WideWord& a, const WideWord& b) noexcept;
WideWord wrapping_sub(const WideWord& a, const WideWord& b) noexcept;
WideWord wrapping_mul(const WideWord& a, const WideWord& b) noexcept;

/// a * b + c (mod 2^256).
WideWord wrapping_mul_add(const WideWord& a, const WideWord& b, const WideWord& c) noexcept;

inline WideWord and_(const WideWord& a, const WideWord& b) noexcept { return a & b; }
inline WideWord or_(const WideWord& a, const WideWord& b) noexcept { return a | b; }
inline WideWord not_(const WideWord& a) noexcept { return ~a; }

}  // namespace gasmatch
