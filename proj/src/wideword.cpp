#include "gasmatch/wideword.hpp"

#include <stdexcept>

namespace gasmatch {

namespace {

__extension__ using u128 = unsigned __int128;

}  // namespace

WideWord WideWord::from_bytes_be(std::span<const std::uint8_t> bytes) {
  if (bytes.size() > kBytes) {
    throw std::invalid_argument("WideWord::from_bytes_be: more than 32 bytes");
  }
  WideWord w;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const std::size_t bit = (kBytes - 1 - i) * 8;
    w.limbs_[bit / 64] |= std::uint64_t{bytes[i]} << (bit % 64);
  }
  return w;
}

std::array<std::uint8_t, WideWord::kBytes> WideWord::to_bytes_be() const noexcept {
  std::array<std::uint8_t, kBytes> out{};
  for (std::size_t i = 0; i < kBytes; ++i) out[i] = byte_be(i);
  return out;
}

WideWord WideWord::high_byte_mask(std::size_t count) {
  if (count > kBytes) {
    throw std::invalid_argument("WideWord::high_byte_mask: more than 32 bytes");
  }
  if (count == 0) return WideWord{};
  return ~shift_right(ones(), count * 8);
}

std::string WideWord::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "0x";
  for (std::uint8_t b : to_bytes_be()) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

WideWord shift_left(const WideWord& w, std::size_t k) noexcept {
  if (k >= WideWord::kBits) return WideWord{};
  const std::size_t limb_shift = k / 64;
  const unsigned bit_shift = static_cast<unsigned>(k % 64);
  WideWord r;
  for (std::size_t i = WideWord::kLimbs; i-- > limb_shift;) {
    std::uint64_t v = w.limbs_[i - limb_shift] << bit_shift;
    if (bit_shift != 0 && i - limb_shift > 0) {
      v |= w.limbs_[i - limb_shift - 1] >> (64 - bit_shift);
    }
    r.limbs_[i] = v;
  }
  return r;
}

WideWord shift_right(const WideWord& w, std::size_t k) noexcept {
  if (k >= WideWord::kBits) return WideWord{};
  const std::size_t limb_shift = k / 64;
  const unsigned bit_shift = static_cast<unsigned>(k % 64);
  WideWord r;
  for (std::size_t i = 0; i + limb_shift < WideWord::kLimbs; ++i) {
    std::uint64_t v = w.limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < WideWord::kLimbs) {
      v |= w.limbs_[i + limb_shift + 1] << (64 - bit_shift);
    }
    r.limbs_[i] = v;
  }
  return r;
}

WideWord wrapping_add(const WideWord& a, const WideWord& b) noexcept {
  WideWord r;
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < WideWord::kLimbs; ++i) {
    const u128 s = u128{a.limbs_[i]} + b.limbs_[i] + carry;
    r.limbs_[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return r;
}

WideWord wrapping_sub(const WideWord& a, const WideWord& b) noexcept {
  WideWord r;
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < WideWord::kLimbs; ++i) {
    const std::uint64_t x = a.limbs_[i];
    const std::uint64_t y = b.limbs_[i];
    const std::uint64_t d = x - y - borrow;
    borrow = (x < y || (x == y && borrow != 0)) ? 1 : 0;
    r.limbs_[i] = d;
  }
  return r;
}

WideWord wrapping_mul(const WideWord& a, const WideWord& b) noexcept {
  // Schoolbook, truncated to the low four limbs.
  WideWord r;
  for (std::size_t i = 0; i < WideWord::kLimbs; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; i + j < WideWord::kLimbs; ++j) {
      const u128 t = u128{a.limbs_[i]} * b.limbs_[j] + r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint64_t>(t);
      carry = static_cast<std::uint64_t>(t >> 64);
    }
  }
  return r;
}

WideWord wrapping_mul_add(const WideWord& a, const WideWord& b, const WideWord& c) noexcept {
  return wrapping_add(wrapping_mul(a, b), c);
}

}  // namespace gasmatch
