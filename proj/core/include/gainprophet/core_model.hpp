#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gainprophet {

// ---------------------------------------------------------------------------
// Gain series
// ---------------------------------------------------------------------------

struct GainEntry {
  std::string year;
  double gain = 0.0;

  friend bool operator==(const GainEntry&, const GainEntry&) = default;
};

/// Ordered yearly gain observations. Year labels are opaque and pairwise
/// distinct; gains are finite. Never empty.
class GainSeries {
 public:
  explicit GainSeries(std::vector<GainEntry> entries);

  const std::vector<GainEntry>& entries() const noexcept { return entries_; }
  std::span<const double> gains() const noexcept { return gains_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::string& year(std::size_t i) const { return entries_.at(i).year; }

 private:
  std::vector<GainEntry> entries_;
  std::vector<double> gains_;
};

// ---------------------------------------------------------------------------
// Factors
// ---------------------------------------------------------------------------

/// The five business factors, in their fixed column order.
enum class Factor : std::uint8_t { Production = 0, Quality, Market, Risk, Cost };

inline constexpr std::size_t kFactorCount = 5;
inline constexpr std::array<Factor, kFactorCount> kFactors = {
    Factor::Production, Factor::Quality, Factor::Market, Factor::Risk, Factor::Cost};

/// Two-valued factor status. For quality, Low reads "Medium" and High reads "Best".
enum class Level : std::uint8_t { Low = 0, High = 1 };

constexpr std::size_t index(Factor f) noexcept { return static_cast<std::size_t>(f); }

/// Single-letter symbol: P, Q, M, R, C.
char factor_symbol(Factor f) noexcept;
std::string_view factor_name(Factor f) noexcept;
std::optional<Factor> factor_from_symbol(std::string_view symbol) noexcept;

/// Two-letter code, e.g. PL, PH, QM, QB.
std::string level_code(Factor f, Level l);

/// Accepts the two-letter code for `f` or the bare level letter (L/H, or M/B
/// for quality), case-insensitively.
std::optional<Level> parse_level(Factor f, std::string_view cell) noexcept;

/// Crisp status of all five factors for one year.
class FactorVector {
 public:
  constexpr FactorVector() = default;
  constexpr explicit FactorVector(std::array<Level, kFactorCount> levels) : levels_(levels) {}

  /// Inverse of `code()`: bit 4 is production, bit 0 is cost.
  static FactorVector from_code(unsigned code);

  constexpr Level operator[](Factor f) const noexcept { return levels_[index(f)]; }
  constexpr const std::array<Level, kFactorCount>& levels() const noexcept { return levels_; }

  /// Boolean encoding in factor order P,Q,M,R,C (Low/Medium -> 0, High/Best -> 1).
  std::array<std::uint8_t, kFactorCount> bits() const noexcept;

  /// The bits read as a 5-bit integer with production as the most significant bit.
  unsigned code() const noexcept;

  /// Space-separated two-letter codes, e.g. "PL QB MH RL CH".
  std::string to_string() const;

  friend constexpr bool operator==(const FactorVector&, const FactorVector&) = default;

 private:
  std::array<Level, kFactorCount> levels_{};
};

// ---------------------------------------------------------------------------
// Observation table and its boolean encoding
// ---------------------------------------------------------------------------

struct Observation {
  std::string year;
  /// The gain cell as written. Tables may carry symbolic gains such as "g1".
  std::string gain_label;
  /// Set when `gain_label` parses as a finite number.
  std::optional<double> gain;
  FactorVector factors;
};

class ObservationTable {
 public:
  explicit ObservationTable(std::vector<Observation> rows);

  const std::vector<Observation>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::vector<Observation> rows_;
};

struct SequenceRow {
  std::string label;
  std::array<std::uint8_t, kFactorCount> bits{};
};

using SequenceMatrix = std::vector<SequenceRow>;

/// Maps every row to its 5-bit encoding, labelled by the row's gain cell.
SequenceMatrix encode_sequence(const ObservationTable& table);

}  // namespace gainprophet
