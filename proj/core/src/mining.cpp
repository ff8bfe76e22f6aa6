#include "gainprophet/mining.hpp"

#include <cmath>
#include <numeric>

#include "gainprophet/errors.hpp"
#include "gainprophet/predictors.hpp"

namespace gainprophet {

Rational::Rational(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) {
    throw DomainError("rational with zero denominator");
  }
  const auto g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const auto l = std::lcm(a.den_, b.den_);
  return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // Denominators here are row counts, so the cross products cannot overflow.
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

SupportReport support_counts(const ObservationTable& table) {
  const std::size_t n = table.size();
  if (n == 0) throw SizeError("support needs a non-empty table");

  std::array<std::size_t, kFactorCount> high{};
  for (const auto& row : table.rows()) {
    for (Factor f : kFactors) {
      if (row.factors[f] == Level::High) ++high[index(f)];
    }
  }
  std::array<std::array<Rational, 2>, kFactorCount> support{};
  for (Factor f : kFactors) {
    const auto h = high[index(f)];
    support[index(f)] = {Rational(n - h, n), Rational(h, n)};
  }
  return SupportReport(support, n);
}

OptimumCondition optimum_condition(const SupportReport& report) {
  static constexpr FactorVector kTarget(
      {Level::High, Level::High, Level::High, Level::Low, Level::Low});
  OptimumCondition out{kTarget, {}};
  for (Factor f : kFactors) {
    out.support[index(f)] = report.support(f, kTarget[f]);
  }
  return out;
}

PatternSummary dominant_pattern(const SequenceMatrix& matrix) {
  if (matrix.empty()) throw SizeError("pattern inference needs a non-empty matrix");

  PatternSummary s;
  s.rows = matrix.size();
  for (const auto& row : matrix) {
    for (std::size_t i = 0; i < kFactorCount; ++i) s.ones[i] += row.bits[i];
  }

  std::string dominant_text;
  std::string tie_text;
  for (Factor f : kFactors) {
    const std::size_t ones = s.ones[index(f)];
    const std::size_t zeros = s.rows - ones;
    auto& d = s.dominant[index(f)];
    d = ones > zeros ? Dominance::One : zeros > ones ? Dominance::Zero : Dominance::Tie;

    if (d == Dominance::Tie) {
      if (!tie_text.empty()) tie_text += ", ";
      tie_text += factor_name(f);
    } else {
      const Level l = d == Dominance::One ? Level::High : Level::Low;
      const std::size_t count = d == Dominance::One ? ones : zeros;
      if (!dominant_text.empty()) dominant_text += ", ";
      dominant_text += level_code(f, l) + " (" + Rational(count, s.rows).to_string() + ")";
    }
  }
  s.recommendation = "dominant: " + (dominant_text.empty() ? "none" : dominant_text) +
                     "; undecided: " + (tie_text.empty() ? "none" : tie_text);
  return s;
}

std::vector<FactorVector> enumerate_states() {
  std::vector<FactorVector> out;
  out.reserve(1u << kFactorCount);
  for (unsigned code = 0; code < (1u << kFactorCount); ++code) {
    out.push_back(FactorVector::from_code(code));
  }
  return out;
}

std::vector<DeviationFlag> deviation_flags(const GainSeries& series, double multiplier) {
  if (series.size() < 3) {
    throw SizeError("deviation flags need at least 3 entries, got " +
                    std::to_string(series.size()));
  }
  if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
    throw ValidationError("multiplier must be a positive finite number");
  }
  const auto gaps = delta_gaps(series.gains());
  const double threshold = multiplier * delta_avg(series.gains());

  std::vector<DeviationFlag> out;
  out.reserve(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    out.push_back({series.year(i + 1), gaps[i] > threshold});
  }
  return out;
}

}  // namespace gainprophet
