#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "gasmatch/config.hpp"
#include "gasmatch/wideword.hpp"

namespace gasmatch {

using Gas = std::uint64_t;
using ByteView = std::span<const std::uint8_t>;

inline constexpr Gas kUnlimitedGas = std::numeric_limits<Gas>::max();

/// Primitive operation kinds the schedule prices.
enum class Op : std::uint8_t {
  word_load,
  byte_read,
  arith,  // add/sub/compare/bitwise
  mul_div,
  shift,
  table_read,
  table_write,
  branch,  // per loop iteration: jumps and loop bookkeeping
  keccak_base,
  keccak_word,
  calldata_byte,
  call,  // once per search: function entry and argument decoding
};

inline constexpr std::size_t kOpCount = 12;

/// Config key for an op (`branch_overhead`, `keccak_per_word`, ...).
std::string_view op_key(Op op) noexcept;
std::optional<Op> op_from_key(std::string_view key) noexcept;

/// Gas cost per primitive. Immutable once built; share freely.
///
/// Defaults are EVM-inspired, not taken from any particular hard fork: ADD is
/// 3 gas and a byte of transaction data is 5 gas, everything else is chosen to
/// sit at plausible EVM magnitudes. `call_overhead` (700, the price of a
/// message call) is charged once per search; set it to 0 to meter the search
/// loop alone.
class GasSchedule {
 public:
  GasSchedule();

  Gas cost(Op op) const noexcept { return costs_[static_cast<std::size_t>(op)]; }
  void set(Op op, Gas cost) noexcept { costs_[static_cast<std::size_t>(op)] = cost; }

  /// keccak_base + keccak_per_word * ceil(length / 32)
  Gas keccak_cost(std::size_t length) const noexcept;
  /// (text_len + pattern_len) * calldata_per_byte
  Gas calldata_cost(std::size_t text_len, std::size_t pattern_len) const noexcept;

  /// Applies `key = integer` entries on top of this schedule. Unknown keys
  /// throw ConfigError unless `ignore_unknown` is set.
  void apply(std::span<const ConfigEntry> entries, bool ignore_unknown = false);

  static GasSchedule parse(std::string_view text);
  static GasSchedule load_file(const std::filesystem::path& path);

  friend bool operator==(const GasSchedule&, const GasSchedule&) = default;

 private:
  std::array<Gas, kOpCount> costs_{};
};

/// Signals that a charge would push consumption past the limit (EVM abort).
class OutOfGas : public std::runtime_error {
 public:
  OutOfGas() : std::runtime_error("out of gas") {}
};

/// Monotone gas counter with an optional limit. One meter per search.
class GasMeter {
 public:
  explicit GasMeter(const GasSchedule& schedule, Gas limit = kUnlimitedGas) noexcept
      : schedule_(&schedule), limit_(limit) {}

  /// Adds count * cost(op). On overflow of the limit nothing changes and
  /// OutOfGas is thrown.
  void charge(Op op, std::uint64_t count = 1) {
    const Gas unit = schedule_->cost(op);
    Gas amount = 0;
    if (__builtin_mul_overflow(unit, count, &amount) || amount > limit_ - consumed_) {
      throw OutOfGas();
    }
    consumed_ += amount;
    tallies_[static_cast<std::size_t>(op)] += count;
  }

  /// Charges one keccak256 over `length` bytes, all-or-nothing.
  void charge_keccak(std::size_t length);

  /// One character comparison: charged as arith, also counted separately.
  void compare_chars() {
    charge(Op::arith);
    ++comparisons_;
  }

  Gas consumed() const noexcept { return consumed_; }
  Gas limit() const noexcept { return limit_; }
  std::uint64_t tally(Op op) const noexcept { return tallies_[static_cast<std::size_t>(op)]; }
  const std::array<std::uint64_t, kOpCount>& tallies() const noexcept { return tallies_; }
  std::uint64_t comparisons() const noexcept { return comparisons_; }
  const GasSchedule& schedule() const noexcept { return *schedule_; }

 private:
  const GasSchedule* schedule_;
  Gas limit_;
  Gas consumed_ = 0;
  std::array<std::uint64_t, kOpCount> tallies_{};
  std::uint64_t comparisons_ = 0;
};

/// Byte buffer whose every read is charged to a meter. Reads past the end
/// return zero, like EVM memory.
class MeteredText {
 public:
  MeteredText(ByteView bytes, GasMeter& meter) noexcept : bytes_(bytes), meter_(&meter) {}

  std::size_t size() const noexcept { return bytes_.size(); }
  ByteView bytes() const noexcept { return bytes_; }
  GasMeter& meter() const noexcept { return *meter_; }

  std::uint8_t read_byte(std::size_t i) const {
    meter_->charge(Op::byte_read);
    return i < bytes_.size() ? bytes_[i] : std::uint8_t{0};
  }

  /// 32 bytes from `offset`, big-endian, zero-padded past the end.
  WideWord load_word(std::size_t offset) const;

 private:
  ByteView bytes_;
  GasMeter* meter_;
};

}  // namespace gasmatch
