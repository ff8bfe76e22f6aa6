#include "gainprophet/fuzzy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gainprophet/csv.hpp"
#include "gainprophet/errors.hpp"

namespace gainprophet {

namespace {

void require_sets(std::span<const FuzzyGainSet> sets) {
  if (sets.empty()) throw SizeError("fuzzy combination needs at least one set");
}

}  // namespace

std::string element_name(Element e) { return "x" + std::to_string(index(e) + 1); }

std::optional<Element> parse_element(std::string_view text) noexcept {
  if (text.size() == 2 && (text[0] == 'x' || text[0] == 'X') && text[1] >= '1' &&
      text[1] <= '5') {
    return static_cast<Element>(text[1] - '1');
  }
  return factor_from_symbol(text);
}

FuzzyGainSet::FuzzyGainSet(std::string label, std::array<double, kFactorCount> memberships,
                           std::optional<double> code)
    : label_(std::move(label)), memberships_(memberships), code_(code) {
  for (Element e : kFactors) {
    const double mu = memberships_[index(e)];
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw ValidationError("membership of " + element_name(e) + " in set '" + label_ +
                            "' is outside [0, 1]");
    }
  }
}

double fuzzy_union_membership(std::span<const FuzzyGainSet> sets, Element e) {
  require_sets(sets);
  double mu = sets.front().membership(e);
  for (const auto& s : sets.subspan(1)) mu = std::max(mu, s.membership(e));
  return mu;
}

double fuzzy_intersection_membership(std::span<const FuzzyGainSet> sets, Element e) {
  require_sets(sets);
  double mu = sets.front().membership(e);
  for (const auto& s : sets.subspan(1)) mu = std::min(mu, s.membership(e));
  return mu;
}

OptimumGainResult optimum_gain(std::span<const FuzzyGainSet> sets, const YearMap& years,
                               const FactorPartition& partition) {
  require_sets(sets);

  std::array<int, kFactorCount> seen{};  // 1 = union, 2 = intersection
  auto mark = [&](const std::vector<Element>& elems, int tag) {
    for (Element e : elems) {
      if (seen[index(e)] != 0) {
        throw ValidationError("element " + element_name(e) + " assigned more than once");
      }
      seen[index(e)] = tag;
    }
  };
  mark(partition.union_elements, 1);
  mark(partition.intersection_elements, 2);
  for (Element e : kFactors) {
    if (seen[index(e)] == 0) {
      throw ValidationError("element " + element_name(e) + " is in neither the union nor the "
                            "intersection list");
    }
  }
  for (const auto& s : sets) {
    if (years.find(s.label()) == years.end()) {
      throw ValidationError("no year given for set '" + s.label() + "'");
    }
  }

  std::array<double, kFactorCount> mu{};
  std::array<Realization, kFactorCount> realization{};
  for (Element e : kFactors) {
    const bool is_union = seen[index(e)] == 1;
    mu[index(e)] = is_union ? fuzzy_union_membership(sets, e)
                            : fuzzy_intersection_membership(sets, e);
    const auto hit = std::find_if(sets.begin(), sets.end(), [&](const FuzzyGainSet& s) {
      return s.membership(e) == mu[index(e)];
    });
    realization[index(e)] = {years.find(hit->label())->second, hit->label()};
  }
  return {FuzzyGainSet("G_opt", mu), realization};
}

std::vector<FuzzyGainSet> parse_fuzzy_sets(std::string_view csv_text) {
  const auto doc = read_csv(csv_text);
  const bool with_code = doc.header.size() == 7;
  if (with_code) {
    expect_header(doc, {"label", "x1", "x2", "x3", "x4", "x5", "code"});
  } else {
    expect_header(doc, {"label", "x1", "x2", "x3", "x4", "x5"});
  }
  if (doc.records.empty()) throw SizeError("fuzzy set file has no data rows");

  std::vector<FuzzyGainSet> sets;
  for (const auto& rec : doc.records) {
    std::array<double, kFactorCount> mu{};
    for (std::size_t i = 0; i < kFactorCount; ++i) {
      const auto v = parse_number(rec.fields[i + 1]);
      if (!v) {
        throw ParseError(rec.line, "membership '" + rec.fields[i + 1] + "' is not a number");
      }
      mu[i] = *v;
    }
    std::optional<double> code;
    if (with_code && !rec.fields[6].empty()) {
      code = parse_number(rec.fields[6]);
      if (!code) throw ParseError(rec.line, "code '" + rec.fields[6] + "' is not a number");
    }
    for (const auto& s : sets) {
      if (s.label() == rec.fields[0]) {
        throw ValidationError("duplicate set label '" + rec.fields[0] + "'");
      }
    }
    sets.emplace_back(rec.fields[0], mu, code);
  }
  return sets;
}

YearMap parse_year_map(std::string_view csv_text) {
  const auto doc = read_csv(csv_text);
  expect_header(doc, {"label", "year"});
  YearMap out;
  for (const auto& rec : doc.records) {
    if (!out.emplace(rec.fields[0], rec.fields[1]).second) {
      throw ValidationError("duplicate set label '" + rec.fields[0] + "' in year map");
    }
  }
  return out;
}

}  // namespace gainprophet
