#include "sendov/io.hpp"

#include <stdexcept>

#include "sendov/errors.hpp"

namespace sendov {

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidSpec(std::string("missing field '") + key + "'");
  return obj.at(key);
}

int require_int(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer()) throw InvalidSpec(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double require_double(const json& obj, const char* key) {
  return to_double(real_from_json(require(obj, key)));
}

}  // namespace

json real_to_json(const DoubleDouble& x) {
  if (x.lo() == 0.0 && std::isfinite(x.hi())) return x.hi();
  return to_decimal(x);
}

DoubleDouble real_from_json(const json& j) {
  if (j.is_number()) return DoubleDouble(j.get<double>());
  if (j.is_string()) {
    try {
      const DoubleDouble x = DoubleDouble::parse(j.get<std::string>());
      if (isfinite(x)) return x;
    } catch (const std::invalid_argument&) {
    }
    throw InvalidSpec("'" + j.get<std::string>() + "' is not a finite decimal");
  }
  throw InvalidSpec("expected a number or a decimal string, got " + j.dump());
}

json spec_to_json(const PolySpec& spec) {
  json crits = json::array();
  for (const CriticalPoint& c : spec.critical_points()) {
    crits.push_back({{"re", real_to_json(c.zeta.re)}, {"im", real_to_json(c.zeta.im)}, {"m", c.multiplicity}});
  }
  return {{"beta", real_to_json(spec.beta())}, {"critical_points", std::move(crits)}};
}

PolySpec spec_from_json(const json& j) {
  const DoubleDouble beta = real_from_json(require(j, "beta"));
  const json& list = require(j, "critical_points");
  if (!list.is_array()) throw InvalidSpec("'critical_points' must be an array");
  std::vector<CriticalPoint> crits;
  for (const json& c : list) {
    const DoubleDouble re = real_from_json(require(c, "re"));
    const DoubleDouble im = c.contains("im") ? real_from_json(c.at("im")) : DoubleDouble(0.0);
    crits.emplace_back(ComplexDD{re, im}, require_int(c, "m"));
  }
  return PolySpec(beta, std::move(crits));
}

json membership_to_json(const MembershipReport& r) {
  json j = {{"is_member", r.is_member},
            {"max_modulus", r.max_modulus},
            {"margin", r.margin},
            {"method", to_string(r.method)},
            {"tol", r.tol},
            {"degree", r.degree},
            {"precision", to_string(r.precision)}};
  j["disk_count"] = r.disk_count ? json(*r.disk_count) : json(nullptr);
  return j;
}

json descriptor_to_json(const FamilyDescriptor& d) {
  json j = spec_to_json(d.spec);
  j["family"] = to_string(d.family);
  json params = json::object();
  for (const auto& [name, value] : d.params) params[name] = value;
  j["params"] = std::move(params);
  return j;
}

json pattern_to_json(const MultiplicityPattern& pattern) {
  json parts = json::array();
  for (const PatternPart& p : pattern.parts) parts.push_back({{"m", p.multiplicity}, {"paired", p.paired}});
  return parts;
}

MultiplicityPattern pattern_from_json(const json& j) {
  if (!j.is_array()) throw InvalidSpec("'pattern' must be an array of {m, paired}");
  MultiplicityPattern out;
  for (const json& p : j) {
    const json& paired = require(p, "paired");
    if (!paired.is_boolean()) throw InvalidSpec("'paired' must be a boolean");
    out.parts.push_back({require_int(p, "m"), paired.get<bool>()});
  }
  return out;
}

json problem_to_json(const SearchProblem& p) {
  json beta = p.beta_mode == BetaMode::free ? json{{"mode", "free"}, {"lo", p.beta_lo}, {"hi", p.beta_hi}}
                                             : json{{"mode", "fixed"}, {"value", p.beta_fixed}};
  return {{"n", p.n},
          {"pattern", pattern_to_json(p.pattern)},
          {"beta", std::move(beta)},
          {"normalization", p.normalization == Normalization::rescale_to_unit ? "rescale_to_unit" : "penalty_only"},
          {"penalty_weight", p.penalty_weight}};
}

SearchProblem problem_from_json(const json& j) {
  SearchProblem p;
  p.n = require_int(j, "n");
  p.pattern = pattern_from_json(require(j, "pattern"));
  if (j.contains("beta")) {
    const json& b = j.at("beta");
    const json& mode = require(b, "mode");
    if (mode == "free") {
      p.beta_mode = BetaMode::free;
      if (b.contains("lo")) p.beta_lo = require_double(b, "lo");
      if (b.contains("hi")) p.beta_hi = require_double(b, "hi");
    } else if (mode == "fixed") {
      p.beta_mode = BetaMode::fixed;
      p.beta_fixed = require_double(b, "value");
    } else {
      throw InvalidSpec("beta mode must be 'free' or 'fixed'");
    }
  }
  if (j.contains("normalization")) {
    const json& norm = j.at("normalization");
    if (norm == "rescale_to_unit") {
      p.normalization = Normalization::rescale_to_unit;
    } else if (norm == "penalty_only") {
      p.normalization = Normalization::penalty_only;
    } else {
      throw InvalidSpec("normalization must be 'rescale_to_unit' or 'penalty_only'");
    }
  }
  if (j.contains("penalty_weight")) p.penalty_weight = require_double(j, "penalty_weight");
  p.validate();
  return p;
}

json result_to_json(const SearchResult& r) {
  return {{"spec", spec_to_json(r.spec)},
          {"pattern", r.pattern},
          {"d", r.d},
          {"c", r.c},
          {"objective", r.objective},
          {"membership", membership_to_json(r.membership)},
          {"converged", r.converged},
          {"evaluations", r.evaluations},
          {"seed", r.seed},
          {"start_index", r.start_index}};
}

}  // namespace sendov
