#include "entosc/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace entosc {

std::string format_number(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot serialize a non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, kSignificantDigits);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  std::string text(buf, res.ptr);
  if (text == "-0") text = "0";
  return text;
}

double round_to_output(double value) {
  const std::string text = format_number(value);
  double out = 0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

void Table::add_column(std::string name, std::vector<double> values) {
  if (has(name)) throw std::invalid_argument("duplicate column " + name);
  if (!data_.empty() && values.size() != rows())
    throw std::invalid_argument("column " + name + " has " + std::to_string(values.size()) + " rows, expected " +
                                std::to_string(rows()));
  names_.push_back(std::move(name));
  data_.push_back(std::move(values));
}

bool Table::has(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& Table::column(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("no column named " + std::string(name));
  return data_[static_cast<std::size_t>(it - names_.begin())];
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns(); ++c) out << (c ? "," : "") << table.names()[c];
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns(); ++c) out << (c ? "," : "") << format_number(table.column(c)[r]);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::runtime_error("malformed number '" + text + "'");
  return v;
}

}  // namespace

Table read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  const auto header = split(line);
  std::vector<std::vector<double>> cols(header.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size())
      throw std::runtime_error("CSV line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(header.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) cols[c].push_back(parse_number(fields[c]));
  }
  Table table;
  for (std::size_t c = 0; c < header.size(); ++c) table.add_column(header[c], std::move(cols[c]));
  return table;
}

nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& metadata) {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata;
  nlohmann::ordered_json columns = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns(); ++c) {
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (double v : table.column(c)) values.push_back(round_to_output(v));
    columns[table.names()[c]] = std::move(values);
  }
  doc["columns"] = std::move(columns);
  return doc;
}

void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& metadata) {
  out << to_json(table, metadata).dump(2) << '\n';
}

Table table_from_json(const nlohmann::ordered_json& doc) {
  Table table;
  for (const auto& [name, values] : doc.at("columns").items()) table.add_column(name, values.get<std::vector<double>>());
  return table;
}

Table to_table(const FluctuationTrace& trace) {
  Table t;
  t.add_column("t", trace.times);
  t.add_column("dx1", trace.dx1);
  t.add_column("dx2", trace.dx2);
  t.add_column("dp1", trace.dp1);
  t.add_column("dp2", trace.dp2);
  t.add_column("up1", trace.up1);
  t.add_column("up2", trace.up2);
  return t;
}

FluctuationTrace trace_from_table(const Table& table) {
  FluctuationTrace tr;
  tr.times = table.column("t");
  tr.dx1 = table.column("dx1");
  tr.dx2 = table.column("dx2");
  tr.dp1 = table.column("dp1");
  tr.dp2 = table.column("dp2");
  tr.up1 = table.column("up1");
  tr.up2 = table.column("up2");
  return tr;
}

Table to_table(const Realization& realization) {
  Table t;
  t.add_column("t", realization.times);
  t.add_column("sample", realization.values);
  t.add_column("envelope_plus", realization.envelope);
  std::vector<double> minus(realization.envelope.size());
  std::transform(realization.envelope.begin(), realization.envelope.end(), minus.begin(), [](double v) { return -v; });
  t.add_column("envelope_minus", std::move(minus));
  return t;
}

Realization realization_from_table(const Table& table) {
  Realization r;
  r.times = table.column("t");
  r.values = table.column("sample");
  r.envelope = table.column("envelope_plus");
  return r;
}

}  // namespace entosc
