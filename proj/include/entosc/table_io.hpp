#pragma once

// Column tables and their CSV / JSON serialization. Numbers are written with
// 9 significant digits through std::to_chars, so output never depends on the
// process locale.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entosc/analytic.hpp"
#include "entosc/sampler.hpp"

namespace entosc {

inline constexpr int kSignificantDigits = 9;

/// Shortest decimal text of `value` rounded to 9 significant digits.
std::string format_number(double value);

/// `value` rounded to 9 significant digits, i.e. what a written file holds.
double round_to_output(double value);

/// Named columns of equal length.
class Table {
 public:
  void add_column(std::string name, std::vector<double> values);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t columns() const { return names_.size(); }
  std::size_t rows() const { return data_.empty() ? 0 : data_.front().size(); }
  bool has(std::string_view name) const;
  const std::vector<double>& column(std::string_view name) const;
  const std::vector<double>& column(std::size_t i) const { return data_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> data_;
};

/// Header row, comma-delimited, LF line endings.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// {"metadata": {...}, "columns": {"name": [values...], ...}} with column order kept.
nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& metadata);
void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& metadata);
Table table_from_json(const nlohmann::ordered_json& doc);

/// Columns t, dx1, dx2, dp1, dp2, up1, up2.
Table to_table(const FluctuationTrace& trace);
FluctuationTrace trace_from_table(const Table& table);

/// Columns t, sample, envelope_plus, envelope_minus.
Table to_table(const Realization& realization);
Realization realization_from_table(const Table& table);

}  // namespace entosc
