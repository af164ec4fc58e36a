#include "cli/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace selbias::cli {

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept {
  if (text == "text") return OutputFormat::text;
  if (text == "csv") return OutputFormat::csv;
  if (text == "markdown" || text == "md") return OutputFormat::markdown;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string fixed(double value, int precision) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  // glibc's printf converts the exact binary value and breaks exact ties
  // with the current rounding mode (round-half-even by default).
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

void write_csv_row(std::ostream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << csv_field(row[i]);
  }
  os << "\r\n";
}

std::string markdown_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  write_csv_row(os, table.header);
  for (const auto& row : table.rows) write_csv_row(os, row);
}

void write_markdown(std::ostream& os, const Table& table) {
  os << '|';
  for (const auto& h : table.header) os << ' ' << markdown_cell(h) << " |";
  os << "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) os << " --- |";
  os << '\n';
  for (const auto& row : table.rows) {
    os << '|';
    for (const auto& cell : row) os << ' ' << markdown_cell(cell) << " |";
    os << '\n';
  }
}

void write_aligned(std::ostream& os, const Table& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  };
  widen(table.header);
  for (const auto& row : table.rows) widen(row);
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << row[i];
      if (i + 1 < row.size()) os << std::string(width[i] - row[i].size(), ' ');
    }
    os << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
}

nlohmann::ordered_json json_number(double value) {
  if (std::isinf(value)) return "inf";
  return value;
}

nlohmann::ordered_json to_json(const JointDistribution& d) {
  nlohmann::ordered_json j;
  j["k"] = d.categories();
  // Rows are exposure levels a = 0, 1; columns are levels of U.
  auto rows = [&](auto getter) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (int a = 0; a < 2; ++a) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t u = 0; u < d.categories(); ++u) row.push_back(getter(a, u));
      out.push_back(row);
    }
    return out;
  };
  j["p_au"] = rows([&](int a, std::size_t u) { return d.p_au(a, u); });
  j["p_s_given_au"] = rows([&](int a, std::size_t u) { return d.p_select(a, u); });
  j["p_y_given_au"] = rows([&](int a, std::size_t u) { return d.p_outcome(a, u); });
  return j;
}

nlohmann::ordered_json to_json(const EffectEstimate& e) {
  nlohmann::ordered_json j;
  j["point"] = e.point().value();
  if (e.lower()) j["lower"] = e.lower()->value();
  if (e.upper()) {
    j["upper"] = e.upper()->is_unbounded() ? nlohmann::ordered_json("inf")
                                           : nlohmann::ordered_json(e.upper()->ratio().value());
  }
  j["scale"] = std::string(to_string(e.scale()));
  return j;
}

}  // namespace selbias::cli
