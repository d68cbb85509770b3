#pragma once

#include "mpvc/cq.hpp"
#include "mpvc/driver.hpp"
#include "mpvc/stationarity.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace mpvc {

using Json = nlohmann::json;

Json to_json(const Vector& v);
Json to_json(const IndexSets& s);
Json to_json(const MpvcMultipliers& m);
Json to_json(const StationarityReport& r);
Json to_json(const CqReport& r);
Json to_json(const NlpSolution& s);
Json to_json(const DriverTrace& t);

Vector vector_from_json(const Json& j);

// "1,2.5,-3" -> vector. Throws UsageError on malformed input.
Vector parse_vector(const std::string& text);

Json read_json_file(const std::string& path);  // throws InputError

}  // namespace mpvc
