#include "gainprophet/core_model.hpp"

#include <cctype>
#include <cmath>
#include <unordered_set>

#include "gainprophet/errors.hpp"

namespace gainprophet {

namespace {

constexpr std::array<char, kFactorCount> kSymbols = {'P', 'Q', 'M', 'R', 'C'};
constexpr std::array<std::string_view, kFactorCount> kNames = {
    "production", "quality", "market competition", "risk", "cost"};
// Level letters per factor: {low-side, high-side}.
constexpr std::array<std::array<char, 2>, kFactorCount> kLevelLetters = {{
    {'L', 'H'}, {'M', 'B'}, {'L', 'H'}, {'L', 'H'}, {'L', 'H'}}};

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

template <typename Rows, typename Key>
void require_distinct(const Rows& rows, Key key) {
  std::unordered_set<std::string> seen;
  for (const auto& row : rows) {
    if (!seen.insert(key(row)).second) {
      throw ValidationError("duplicate year '" + key(row) + "'");
    }
  }
}

}  // namespace

GainSeries::GainSeries(std::vector<GainEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw SizeError("gain series needs at least one entry");
  }
  require_distinct(entries_, [](const GainEntry& e) { return e.year; });
  gains_.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!std::isfinite(e.gain)) {
      throw ValidationError("gain for year '" + e.year + "' is not finite");
    }
    gains_.push_back(e.gain);
  }
}

char factor_symbol(Factor f) noexcept { return kSymbols[index(f)]; }

std::string_view factor_name(Factor f) noexcept { return kNames[index(f)]; }

std::optional<Factor> factor_from_symbol(std::string_view symbol) noexcept {
  if (symbol.size() != 1) return std::nullopt;
  for (Factor f : kFactors) {
    if (kSymbols[index(f)] == upper(symbol[0])) return f;
  }
  return std::nullopt;
}

std::string level_code(Factor f, Level l) {
  return {kSymbols[index(f)], kLevelLetters[index(f)][static_cast<std::size_t>(l)]};
}

std::optional<Level> parse_level(Factor f, std::string_view cell) noexcept {
  if (cell.size() == 2) {
    if (upper(cell[0]) != kSymbols[index(f)]) return std::nullopt;
    cell.remove_prefix(1);
  }
  if (cell.size() != 1) return std::nullopt;
  const auto& letters = kLevelLetters[index(f)];
  const char c = upper(cell[0]);
  if (c == letters[0]) return Level::Low;
  if (c == letters[1]) return Level::High;
  return std::nullopt;
}

FactorVector FactorVector::from_code(unsigned code) {
  if (code >= (1u << kFactorCount)) {
    throw DomainError("factor code " + std::to_string(code) + " exceeds 5 bits");
  }
  std::array<Level, kFactorCount> levels{};
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    levels[i] = ((code >> (kFactorCount - 1 - i)) & 1u) ? Level::High : Level::Low;
  }
  return FactorVector(levels);
}

std::array<std::uint8_t, kFactorCount> FactorVector::bits() const noexcept {
  std::array<std::uint8_t, kFactorCount> out{};
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    out[i] = static_cast<std::uint8_t>(levels_[i]);
  }
  return out;
}

unsigned FactorVector::code() const noexcept {
  unsigned c = 0;
  for (auto b : bits()) c = (c << 1) | b;
  return c;
}

std::string FactorVector::to_string() const {
  std::string out;
  for (Factor f : kFactors) {
    if (!out.empty()) out += ' ';
    out += level_code(f, (*this)[f]);
  }
  return out;
}

ObservationTable::ObservationTable(std::vector<Observation> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw SizeError("observation table needs at least one row");
  }
  require_distinct(rows_, [](const Observation& o) { return o.year; });
}

SequenceMatrix encode_sequence(const ObservationTable& table) {
  SequenceMatrix out;
  out.reserve(table.size());
  for (const auto& row : table.rows()) {
    out.push_back({row.gain_label, row.factors.bits()});
  }
  return out;
}

}  // namespace gainprophet
