#pragma once

// JSON forms of the library reports. Keys are emitted in a fixed order;
// big integers are decimal strings so every record parses back exactly.

#include <string>

#include "json.hpp"

#include "fltkit/cubic.hpp"
#include "fltkit/dio.hpp"
#include "fltkit/errors.hpp"
#include "fltkit/formclass.hpp"
#include "fltkit/genus.hpp"
#include "fltkit/polyfam.hpp"
#include "fltkit/sunit.hpp"
#include "fltkit/unitsq.hpp"

namespace fltkit::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const QuadFieldReport& r);
QuadFieldReport quad_report_from_json(const Json& j);

Json to_json(const DirectConditions& r);
Json to_json(const CompCritReport& r);
CompCritReport compcrit_report_from_json(const Json& j);

Json to_json(const KrausVerdict& v);
Json to_json(const DioProof& p);
Json to_json(const CfReduction& r);
Json to_json(const TailCheck& t);
Json to_json(const CubicCase& c);
Json to_json(const RamificationCertificate& c);
Json to_json(const BigPoly& f); // ascending coefficient strings

std::string utc_timestamp();

} // namespace fltkit::cli
