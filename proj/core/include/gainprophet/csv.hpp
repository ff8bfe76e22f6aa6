#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gainprophet/core_model.hpp"

namespace gainprophet {

/// One data line of a CSV document, with its 1-based line number in the source.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct CsvDocument {
  std::vector<std::string> header;
  std::vector<CsvRecord> records;
};

/// Splits UTF-8 comma-separated text. Fields are trimmed of surrounding
/// whitespace; blank lines are skipped; CRLF is accepted. Quoting is not
/// supported, so a field may not contain a comma.
/// Throws ParseError when there is no header or a record's width differs from it.
CsvDocument read_csv(std::string_view text);

/// Throws ParseError (line 1) unless the header matches `expected`
/// case-insensitively, column for column.
void expect_header(const CsvDocument& doc, const std::vector<std::string_view>& expected);

/// Strict decimal parse of the whole field; nullopt on junk or non-finite values.
std::optional<double> parse_number(std::string_view field) noexcept;

/// Shortest text that parses back to exactly `value`.
std::string format_number(double value);

/// CSV with header `year,gain`.
GainSeries parse_gain_series(std::string_view csv_text);

/// Inverse of parse_gain_series; gains are written in shortest round-trip form.
std::string serialize_gain_series(const GainSeries& series);

/// CSV with header `year,gain,P,Q,M,R,C`.
ObservationTable parse_observation_table(std::string_view csv_text);

/// Reads a whole file; throws ValidationError naming the path on failure.
std::string read_file(const std::string& path);

}  // namespace gainprophet
