#pragma once

#include <json.hpp>

#include "hsurf/continued_fraction.hpp"
#include "hsurf/staircase.hpp"
#include "hsurf/surface.hpp"
#include "hsurf/symbolic.hpp"
#include "hsurf/upsilon.hpp"

namespace hsurf {

using Json = nlohmann::ordered_json;

// Exact values become strings ("5/12", "(-1+sqrt5)/2"); enclosures become
// {"value": decimal, "err": radius, "center": p/q, "radius": p/q}.
Json real_to_json(const Real& x);
Real real_from_json(const Json& j);

Json cf_to_json(const ContinuedFraction& cf);
ContinuedFraction cf_from_json(const Json& j);

Json to_json(const ClassifiedDirection& c);
ClassifiedDirection classified_from_json(const Json& j);

Json to_json(const CrossingEvent& e);
CrossingEvent event_from_json(const Json& j);
Json to_json(const TraceResult& r);  // {"events": [...], "status": ..., ...}
TraceResult trace_from_json(const Json& j);

Json to_json(const Tongue& t);
Json to_json(const GapSumReport& r);
Json to_json(const CuttingComparison& c);
Json to_json(const CrossingReport& r);

}  // namespace hsurf
