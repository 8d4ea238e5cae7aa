#pragma once

#include <nlohmann/json.hpp>

#include "parcoh/bar.hpp"
#include "parcoh/cohomology.hpp"
#include "parcoh/fixtures.hpp"

namespace parcoh {

using json = nlohmann::json;

// Complex matrices as [[[re, im], ...], ...] (row major).
json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j);

// [{"left": "x1 y1", "right": "x1^-1", "coefficient": 1.0}, ...]
json chain_to_json(const BarChain2& c);
BarChain2 chain_from_json(const json& j);

json rep_to_json(const RepresentationPoint& phi);
RepresentationPoint rep_from_json(const json& j);  // validates against the named backend

json report_to_json(const CohomologyReport& r);
json fixture_to_json(const Fixture& f);

Backend backend_from_name(const std::string& name);  // "su2", "sl2r", "u1", "u1:k"

}  // namespace parcoh
