#pragma once

#include "json.hpp"
#include "sendov/families.hpp"
#include "sendov/polyform.hpp"
#include "sendov/roots.hpp"
#include "sendov/search.hpp"

namespace sendov {

using nlohmann::json;

// A real written as a JSON number when it is an exact double, otherwise as
// the shortest decimal string that parses back to it. Readers accept both.
json real_to_json(const DoubleDouble& x);
DoubleDouble real_from_json(const json& j);  // throws InvalidSpec

// {"beta": .., "critical_points": [{"re": .., "im": .., "m": ..}, ...]}
json spec_to_json(const PolySpec& spec);
PolySpec spec_from_json(const json& j);  // throws InvalidSpec

json membership_to_json(const MembershipReport& report);
json descriptor_to_json(const FamilyDescriptor& descriptor);

json pattern_to_json(const MultiplicityPattern& pattern);
MultiplicityPattern pattern_from_json(const json& j);

// {"n", "pattern", "beta": {"mode": "free", "lo", "hi"} | {"mode": "fixed",
// "value"}, "normalization", "penalty_weight"}
json problem_to_json(const SearchProblem& problem);
SearchProblem problem_from_json(const json& j);  // throws InvalidSpec

json result_to_json(const SearchResult& result);

}  // namespace sendov
