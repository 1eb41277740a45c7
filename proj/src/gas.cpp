#include "gasmatch/gas.hpp"

#include <algorithm>
#include <string>

namespace gasmatch {

namespace {

constexpr std::array<std::string_view, kOpCount> kOpKeys = {
    "word_load",   "byte_read",   "arith",           "mul_div",
    "shift",       "table_read",  "table_write",     "branch_overhead",
    "keccak_base", "keccak_per_word", "calldata_per_byte", "call_overhead",
};

}  // namespace

std::string_view op_key(Op op) noexcept { return kOpKeys[static_cast<std::size_t>(op)]; }

std::optional<Op> op_from_key(std::string_view key) noexcept {
  const auto it = std::find(kOpKeys.begin(), kOpKeys.end(), key);
  if (it == kOpKeys.end()) return std::nullopt;
  return static_cast<Op>(it - kOpKeys.begin());
}

GasSchedule::GasSchedule() {
  set(Op::word_load, 3);
  set(Op::byte_read, 3);
  set(Op::arith, 3);
  set(Op::mul_div, 5);
  set(Op::shift, 3);
  set(Op::table_read, 3);
  set(Op::table_write, 6);
  set(Op::branch, 10);
  set(Op::keccak_base, 30);
  set(Op::keccak_word, 6);
  set(Op::calldata_byte, 5);
  set(Op::call, 700);
}

Gas GasSchedule::keccak_cost(std::size_t length) const noexcept {
  const std::uint64_t words = (static_cast<std::uint64_t>(length) + 31) / 32;
  return cost(Op::keccak_base) + cost(Op::keccak_word) * words;
}

Gas GasSchedule::calldata_cost(std::size_t text_len, std::size_t pattern_len) const noexcept {
  return (static_cast<Gas>(text_len) + pattern_len) * cost(Op::calldata_byte);
}

void GasSchedule::apply(std::span<const ConfigEntry> entries, bool ignore_unknown) {
  for (const auto& e : entries) {
    const auto op = op_from_key(e.key);
    if (!op) {
      if (ignore_unknown) continue;
      throw ConfigError("line " + std::to_string(e.line) + ": unknown schedule key `" + e.key +
                        "`");
    }
    set(*op, parse_u64(e.value, e.key));
  }
}

GasSchedule GasSchedule::parse(std::string_view text) {
  GasSchedule s;
  const auto entries = parse_config_text(text);
  s.apply(entries);
  return s;
}

GasSchedule GasSchedule::load_file(const std::filesystem::path& path) {
  return parse(read_file(path));
}

void GasMeter::charge_keccak(std::size_t length) {
  const std::uint64_t words = (static_cast<std::uint64_t>(length) + 31) / 32;
  const Gas total = schedule_->keccak_cost(length);
  if (total > limit_ - consumed_) throw OutOfGas();
  consumed_ += total;
  tallies_[static_cast<std::size_t>(Op::keccak_base)] += 1;
  tallies_[static_cast<std::size_t>(Op::keccak_word)] += words;
}

WideWord MeteredText::load_word(std::size_t offset) const {
  meter_->charge(Op::word_load);
  if (offset >= bytes_.size()) return WideWord{};
  const std::size_t len = std::min<std::size_t>(WideWord::kBytes, bytes_.size() - offset);
  return WideWord::from_bytes_be(bytes_.subspan(offset, len));
}

}  // namespace gasmatch
