#pragma once

#include <filesystem>

#include <json.hpp>

#include "wcone/measure.hpp"
#include "wcone/space.hpp"
#include "wcone/transport.hpp"

namespace wcone {

/// JSON shapes:
///   space:   {"type":"finite","dist":[[...],...]} | {"type":"circle"}
///          | {"type":"euclidean","dim":k}
///          | {"type":"cone","base":<space>}
///          | {"type":"product","left":<space>,"right":<space>}
///   point:   {"index":i} | {"angle":a} | {"coords":[...]}
///          | {"base":<point>,"radius":r} | {"left":<point>,"right":<point>}
///   measure: {"space":<space>,"support":[<point>...],"weights":[...]}
///
/// All parse failures surface as InvalidInput.
nlohmann::json space_to_json(const Space& space);

/// `check_finite` controls whether finite distance matrices must satisfy the
/// metric axioms; pass false to load a questionable matrix for inspection.
Space space_from_json(const nlohmann::json& j, bool check_finite = true);

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const TransportPlan& plan);

nlohmann::json metric_report_to_json(const MetricReport& report);

/// File loaders; wrap stream and parse errors into InvalidInput.
nlohmann::json load_json_file(const std::filesystem::path& path);
Space load_space(const std::filesystem::path& path, bool check_finite = true);
DiscreteMeasure load_measure(const std::filesystem::path& path);

}  // namespace wcone
