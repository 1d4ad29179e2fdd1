#pragma once

#include <json.hpp>

#include "critset/dirichlet.hpp"
#include "critset/first_order.hpp"
#include "critset/grid_function.hpp"
#include "critset/periodic.hpp"
#include "critset/planar_singularity.hpp"
#include "critset/third_order.hpp"

namespace critset {

nlohmann::json to_json(const GridFunction& u);
GridFunction grid_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CriticalCurve& c);
nlohmann::json to_json(const PruferTrace& t);
nlohmann::json to_json(const MonodromyLift& m);
nlohmann::json to_json(const PeriodicClassification& c);
nlohmann::json to_json(const SphereCurve& c);
nlohmann::json to_json(const HomotopyPath& p);
nlohmann::json to_json(const RegionCensus& c);

const char* to_string(PointTag tag);
const char* to_string(PeriodicKind kind);

} // namespace critset
