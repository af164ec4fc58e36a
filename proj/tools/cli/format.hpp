#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "selbias/joint_distribution.hpp"
#include "selbias/risk_ratio.hpp"

namespace selbias::cli {

enum class OutputFormat { text, csv, markdown, json };

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept;

/// Fixed-point rendering with `precision` decimals. The conversion rounds
/// the exact binary value to nearest, ties to even. Infinity renders as "inf".
std::string fixed(double value, int precision);

/// RFC 4180 field quoting: quoted only when the field holds a comma, quote,
/// CR or LF; embedded quotes are doubled.
std::string csv_field(std::string_view field);

/// A rectangular block of already-formatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& table);
void write_markdown(std::ostream& os, const Table& table);
/// Space-aligned columns for terminal reading.
void write_aligned(std::ostream& os, const Table& table);

/// JSON value for a possibly unbounded number: the number, or "inf".
nlohmann::ordered_json json_number(double value);

nlohmann::ordered_json to_json(const JointDistribution& d);
nlohmann::ordered_json to_json(const EffectEstimate& e);

}  // namespace selbias::cli
