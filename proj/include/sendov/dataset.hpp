#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sendov/polyform.hpp"

namespace sendov {

// Decimal strings exactly as printed in the source tables.
struct RecordPoint {
  std::string re;
  std::string im;
  int multiplicity = 1;
  bool conjugate_pair = false;  // stands for re +- i im, both with this multiplicity
};

struct ExtremalRecord {
  int table_id = 0;
  int values_table_id = 0;
  int n = 0;
  std::string beta;
  std::vector<RecordPoint> critical_points;
  std::string expected_r;
  std::string expected_c;
  // K and n (c - K) for the tables that print that column.
  std::optional<std::string> derived_constant;
  std::optional<std::string> expected_derived;

  // Parsed in double-double, pairs expanded.
  PolySpec spec() const;
};

// Throws DatasetError on malformed input or a row whose multiplicities do
// not add up to n - 1.
std::vector<ExtremalRecord> parse_dataset(std::string_view text);
nlohmann::json dataset_to_json(const std::vector<ExtremalRecord>& records);

std::string_view embedded_dataset_text();
const std::vector<ExtremalRecord>& embedded_dataset();

// "1/3" or a decimal.
DoubleDouble parse_constant(const std::string& text);

}  // namespace sendov
