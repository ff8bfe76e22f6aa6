#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gainprophet/core_model.hpp"

namespace gainprophet {

/// Element of the five-factor universe {x1..x5}; x1..x5 are P, Q, M, R, C.
using Element = Factor;

/// "x1".."x5"
std::string element_name(Element e);

/// Accepts "x1".."x5" or the factor symbol (P, Q, M, R, C), case-insensitively.
std::optional<Element> parse_element(std::string_view text) noexcept;

/// Membership of each universe element in one gain's fuzzy set.
class FuzzyGainSet {
 public:
  /// Throws ValidationError unless every membership is in [0, 1].
  FuzzyGainSet(std::string label, std::array<double, kFactorCount> memberships,
               std::optional<double> code = std::nullopt);

  const std::string& label() const noexcept { return label_; }
  double membership(Element e) const noexcept { return memberships_[index(e)]; }
  const std::array<double, kFactorCount>& memberships() const noexcept { return memberships_; }

  /// Scalar fuzzy code attached to the gain, if any. Carried as metadata only.
  const std::optional<double>& code() const noexcept { return code_; }

 private:
  std::string label_;
  std::array<double, kFactorCount> memberships_;
  std::optional<double> code_;
};

/// Max-union membership at `e`. Needs at least one set.
double fuzzy_union_membership(std::span<const FuzzyGainSet> sets, Element e);

/// Min-intersection membership at `e`. Needs at least one set.
double fuzzy_intersection_membership(std::span<const FuzzyGainSet> sets, Element e);

/// Which elements aggregate by union and which by intersection. The two
/// lists must partition the universe.
struct FactorPartition {
  std::vector<Element> union_elements{Factor::Production, Factor::Quality, Factor::Market};
  std::vector<Element> intersection_elements{Factor::Risk, Factor::Cost};
};

struct Realization {
  std::string year;
  std::string set_label;
};

struct OptimumGainResult {
  FuzzyGainSet memberships;
  std::array<Realization, kFactorCount> realization;
};

/// Set label -> year label.
using YearMap = std::map<std::string, std::string, std::less<>>;

/// Element-wise max over `sets` for union elements and min for intersection
/// elements. Each element is realized by the first set in input order that
/// attains the optimum.
OptimumGainResult optimum_gain(std::span<const FuzzyGainSet> sets, const YearMap& years,
                               const FactorPartition& partition = {});

/// CSV with header `label,x1,x2,x3,x4,x5` and an optional trailing `code` column.
std::vector<FuzzyGainSet> parse_fuzzy_sets(std::string_view csv_text);

/// CSV with header `label,year`.
YearMap parse_year_map(std::string_view csv_text);

}  // namespace gainprophet
