#include "gainprophet/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gainprophet/errors.hpp"

namespace gainprophet {

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return std::tolower(static_cast<unsigned char>(x)) ==
           std::tolower(static_cast<unsigned char>(y));
  });
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

CsvDocument read_csv(std::string_view text) {
  CsvDocument doc;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  // Strip a UTF-8 byte-order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    auto fields = split_fields(line);
    if (!have_header) {
      doc.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != doc.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(doc.header.size()) +
                                    " fields, found " + std::to_string(fields.size()));
    }
    doc.records.push_back({line_no, std::move(fields)});
  }
  if (!have_header) {
    throw ParseError(1, "missing header line");
  }
  return doc;
}

void expect_header(const CsvDocument& doc, const std::vector<std::string_view>& expected) {
  bool ok = doc.header.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = iequals(doc.header[i], expected[i]);
  }
  if (!ok) {
    std::string want;
    for (auto col : expected) {
      if (!want.empty()) want += ',';
      want += col;
    }
    throw ParseError(1, "expected header '" + want + "'");
  }
}

std::optional<double> parse_number(std::string_view field) noexcept {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_number(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

GainSeries parse_gain_series(std::string_view csv_text) {
  const auto doc = read_csv(csv_text);
  expect_header(doc, {"year", "gain"});
  if (doc.records.empty()) {
    throw SizeError("gain series has no data rows");
  }
  std::vector<GainEntry> entries;
  entries.reserve(doc.records.size());
  for (const auto& rec : doc.records) {
    const auto gain = parse_number(rec.fields[1]);
    if (!gain) {
      throw ParseError(rec.line, "gain '" + rec.fields[1] + "' is not a finite number");
    }
    if (rec.fields[0].empty()) {
      throw ParseError(rec.line, "empty year label");
    }
    entries.push_back({rec.fields[0], *gain});
  }
  return GainSeries(std::move(entries));
}

std::string serialize_gain_series(const GainSeries& series) {
  std::string out = "year,gain\n";
  for (const auto& e : series.entries()) {
    out += e.year;
    out += ',';
    out += format_number(e.gain);
    out += '\n';
  }
  return out;
}

ObservationTable parse_observation_table(std::string_view csv_text) {
  const auto doc = read_csv(csv_text);
  expect_header(doc, {"year", "gain", "P", "Q", "M", "R", "C"});
  if (doc.records.empty()) {
    throw SizeError("observation table has no data rows");
  }
  std::vector<Observation> rows;
  rows.reserve(doc.records.size());
  for (const auto& rec : doc.records) {
    std::array<Level, kFactorCount> levels{};
    for (Factor f : kFactors) {
      const auto& cell = rec.fields[2 + index(f)];
      const auto level = parse_level(f, cell);
      if (!level) {
        throw ValidationError("line " + std::to_string(rec.line) + ": unknown code '" + cell +
                              "' in column " + factor_symbol(f));
      }
      levels[index(f)] = *level;
    }
    if (rec.fields[0].empty()) {
      throw ParseError(rec.line, "empty year label");
    }
    rows.push_back({rec.fields[0], rec.fields[1], parse_number(rec.fields[1]),
                    FactorVector(levels)});
  }
  return ObservationTable(std::move(rows));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot read file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gainprophet
