#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gainprophet/core_model.hpp"

namespace gainprophet {

/// Non-negative exact fraction kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t numerator, std::uint64_t denominator);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q", or "p" when q == 1.
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Fraction of rows holding each of the ten factor levels.
class SupportReport {
 public:
  SupportReport(std::array<std::array<Rational, 2>, kFactorCount> support, std::size_t rows)
      : support_(support), rows_(rows) {}

  const Rational& support(Factor f, Level l) const {
    return support_[index(f)][static_cast<std::size_t>(l)];
  }
  std::size_t rows() const noexcept { return rows_; }

 private:
  std::array<std::array<Rational, 2>, kFactorCount> support_;
  std::size_t rows_;
};

SupportReport support_counts(const ObservationTable& table);

/// The favourable-level target and the support each of its levels received.
struct OptimumCondition {
  FactorVector target;
  std::array<Rational, kFactorCount> support;
};

/// The target is always high production, best quality, high market
/// competition, low risk, low cost; only the support annotation depends on
/// the report.
OptimumCondition optimum_condition(const SupportReport& report);

enum class Dominance : std::uint8_t { Zero, One, Tie };

struct PatternSummary {
  std::array<Dominance, kFactorCount> dominant{};
  /// Count of 1-bits per factor column, and the number of rows.
  std::array<std::size_t, kFactorCount> ones{};
  std::size_t rows = 0;
  std::string recommendation;
};

/// Strict-majority vote per factor column; exactly half is a tie.
PatternSummary dominant_pattern(const SequenceMatrix& matrix);

/// All 32 crisp factor states in ascending order of their 5-bit code.
std::vector<FactorVector> enumerate_states();

struct DeviationFlag {
  std::string year;
  bool flagged = false;
};

/// One entry per gap, labelled with the later year of the pair. A gap is
/// flagged when it strictly exceeds multiplier * delta_avg.
/// Needs >= 3 entries and multiplier > 0.
std::vector<DeviationFlag> deviation_flags(const GainSeries& series, double multiplier);

}  // namespace gainprophet
