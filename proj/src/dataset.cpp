#include "sendov/dataset.hpp"

#include <map>
#include <stdexcept>

#include "sendov/errors.hpp"

namespace sendov {

namespace detail {
extern const std::string_view kEmbeddedDataset;
}

namespace {

using nlohmann::json;

DoubleDouble parse_decimal(const std::string& text, const std::string& where) {
  try {
    const DoubleDouble x = DoubleDouble::parse(text);
    if (!isfinite(x)) throw std::invalid_argument("not finite");
    return x;
  } catch (const std::invalid_argument&) {
    throw DatasetError(where + ": '" + text + "' is not a finite decimal");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw DatasetError(where + ": missing '" + key + "'");
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw DatasetError(where + ": '" + key + "' must be a decimal string");
  const std::string s = v.get<std::string>();
  parse_decimal(s, where + "." + key);
  return s;
}

int int_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw DatasetError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

DoubleDouble parse_constant(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text, "constant");
  return parse_decimal(text.substr(0, slash), "constant") / parse_decimal(text.substr(slash + 1), "constant");
}

PolySpec ExtremalRecord::spec() const {
  std::vector<CriticalPoint> crits;
  for (const RecordPoint& p : critical_points) {
    const DoubleDouble re = DoubleDouble::parse(p.re);
    const DoubleDouble im = DoubleDouble::parse(p.im);
    crits.emplace_back(ComplexDD{re, im}, p.multiplicity);
    if (p.conjugate_pair) crits.emplace_back(ComplexDD{re, -im}, p.multiplicity);
  }
  return PolySpec(DoubleDouble::parse(beta), std::move(crits));
}

std::vector<ExtremalRecord> parse_dataset(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DatasetError(std::string("dataset is not valid JSON: ") + e.what());
  }
  if (int_field(doc, "format", "dataset") != 1) throw DatasetError("unsupported dataset format");
  const json& tables = field(doc, "tables", "dataset");
  if (!tables.is_array()) throw DatasetError("dataset: 'tables' must be an array");

  std::vector<ExtremalRecord> out;
  for (const json& t : tables) {
    const int table_id = int_field(t, "table_id", "table");
    const std::string tw = "table " + std::to_string(table_id);
    const int values_id = int_field(t, "values_table_id", tw);
    std::optional<std::string> constant;
    if (t.contains("derived_constant")) {
      if (!t.at("derived_constant").is_string()) throw DatasetError(tw + ": derived_constant must be a string");
      constant = t.at("derived_constant").get<std::string>();
      parse_constant(*constant);
    }
    const json& rows = field(t, "rows", tw);
    if (!rows.is_array()) throw DatasetError(tw + ": 'rows' must be an array");
    for (const json& row : rows) {
      ExtremalRecord r;
      r.table_id = table_id;
      r.values_table_id = values_id;
      r.derived_constant = constant;
      r.n = int_field(row, "n", tw);
      const std::string where = tw + " n=" + std::to_string(r.n);
      r.beta = string_field(row, "beta", where);
      r.expected_r = string_field(row, "expected_r", where);
      r.expected_c = string_field(row, "expected_c", where);
      if (row.contains("expected_derived")) r.expected_derived = string_field(row, "expected_derived", where);
      if (r.expected_derived.has_value() != constant.has_value()) {
        throw DatasetError(where + ": expected_derived and derived_constant must come together");
      }
      const json& crits = field(row, "critical_points", where);
      if (!crits.is_array() || crits.empty()) throw DatasetError(where + ": critical_points must be a nonempty array");
      long total = 0;
      for (const json& c : crits) {
        RecordPoint p;
        p.re = string_field(c, "re", where);
        p.im = string_field(c, "im", where);
        p.multiplicity = int_field(c, "m", where);
        const json& pair = field(c, "conjugate_pair", where);
        if (!pair.is_boolean()) throw DatasetError(where + ": conjugate_pair must be a boolean");
        p.conjugate_pair = pair.get<bool>();
        if (p.multiplicity < 1) throw DatasetError(where + ": multiplicity must be >= 1");
        total += p.conjugate_pair ? 2L * p.multiplicity : p.multiplicity;
        r.critical_points.push_back(std::move(p));
      }
      if (total != r.n - 1) {
        throw DatasetError(where + ": multiplicities add up to " + std::to_string(total) + ", not n - 1");
      }
      try {
        r.spec();
      } catch (const Error& e) {
        throw DatasetError(where + ": " + e.what());
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

json dataset_to_json(const std::vector<ExtremalRecord>& records) {
  json tables = json::array();
  std::map<int, std::size_t> index;
  for (const ExtremalRecord& r : records) {
    auto it = index.find(r.table_id);
    if (it == index.end()) {
      json t = {{"table_id", r.table_id}, {"values_table_id", r.values_table_id}, {"rows", json::array()}};
      if (r.derived_constant) t["derived_constant"] = *r.derived_constant;
      it = index.emplace(r.table_id, tables.size()).first;
      tables.push_back(std::move(t));
    }
    json crits = json::array();
    for (const RecordPoint& p : r.critical_points) {
      crits.push_back({{"re", p.re}, {"im", p.im}, {"m", p.multiplicity}, {"conjugate_pair", p.conjugate_pair}});
    }
    json row = {{"n", r.n},
                {"beta", r.beta},
                {"critical_points", std::move(crits)},
                {"expected_r", r.expected_r},
                {"expected_c", r.expected_c}};
    if (r.expected_derived) row["expected_derived"] = *r.expected_derived;
    tables[it->second]["rows"].push_back(std::move(row));
  }
  return {{"format", 1}, {"tables", std::move(tables)}};
}

std::string_view embedded_dataset_text() { return detail::kEmbeddedDataset; }

const std::vector<ExtremalRecord>& embedded_dataset() {
  static const std::vector<ExtremalRecord> records = parse_dataset(detail::kEmbeddedDataset);
  return records;
}

}  // namespace sendov
