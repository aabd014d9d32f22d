#include "wcone/json_io.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "wcone/error.hpp"

namespace wcone {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw InvalidInput(what); }

const json& field(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string(context) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number_field(const json& j, const char* key, const char* context) {
  const json& v = field(j, key, context);
  if (!v.is_number()) {
    fail(std::string(context) + ": field \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

}  // namespace

json space_to_json(const Space& space) {
  switch (space.kind()) {
    case Space::Kind::finite: {
      const std::size_t n = space.finite_size();
      json rows = json::array();
      for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) {
          row.push_back(space.finite_distance(i, j));
        }
        rows.push_back(std::move(row));
      }
      return {{"type", "finite"}, {"dist", std::move(rows)}};
    }
    case Space::Kind::circle:
      return {{"type", "circle"}};
    case Space::Kind::euclidean:
      return {{"type", "euclidean"}, {"dim", space.euclidean_dim()}};
    case Space::Kind::cone:
      return {{"type", "cone"}, {"base", space_to_json(space.base())}};
    case Space::Kind::product:
      return {{"type", "product"},
              {"left", space_to_json(space.left())},
              {"right", space_to_json(space.right())}};
  }
  throw Error("unreachable space kind");
}

Space space_from_json(const json& j, bool check_finite) {
  const json& type = field(j, "type", "space");
  if (!type.is_string()) fail("space: \"type\" must be a string");
  const std::string kind = type.get<std::string>();

  if (kind == "finite") {
    const json& rows = field(j, "dist", "finite space");
    if (!rows.is_array()) fail("finite space: \"dist\" must be an array");
    std::vector<std::vector<double>> matrix;
    matrix.reserve(rows.size());
    for (const json& row : rows) {
      if (!row.is_array()) fail("finite space: \"dist\" rows must be arrays");
      std::vector<double> values;
      values.reserve(row.size());
      for (const json& v : row) {
        if (!v.is_number()) fail("finite space: distances must be numbers");
        values.push_back(v.get<double>());
      }
      matrix.push_back(std::move(values));
    }
    return check_finite ? Space::finite(matrix)
                        : Space::finite_unchecked(matrix);
  }
  if (kind == "circle") return Space::circle();
  if (kind == "euclidean") {
    const json& dim = field(j, "dim", "euclidean space");
    if (!dim.is_number_unsigned()) {
      fail("euclidean space: \"dim\" must be a nonnegative integer");
    }
    return Space::euclidean(dim.get<std::size_t>());
  }
  if (kind == "cone") {
    return Space::cone(
        space_from_json(field(j, "base", "cone space"), check_finite));
  }
  if (kind == "product") {
    return Space::product(
        space_from_json(field(j, "left", "product space"), check_finite),
        space_from_json(field(j, "right", "product space"), check_finite));
  }
  fail("space: unknown type \"" + kind + "\"");
}

json point_to_json(const Point& p) {
  switch (p.kind()) {
    case Space::Kind::finite:
      return {{"index", p.index()}};
    case Space::Kind::circle:
      return {{"angle", p.angle()}};
    case Space::Kind::euclidean: {
      json coords = json::array();
      for (double c : p.coords()) coords.push_back(c);
      return {{"coords", std::move(coords)}};
    }
    case Space::Kind::cone:
      return {{"base", point_to_json(p.base())}, {"radius", p.radius()}};
    case Space::Kind::product:
      return {{"left", point_to_json(p.left())},
              {"right", point_to_json(p.right())}};
  }
  throw Error("unreachable point kind");
}

Point point_from_json(const json& j) {
  if (!j.is_object()) fail("point: expected an object");
  if (j.contains("index")) {
    const json& idx = j.at("index");
    if (!idx.is_number_unsigned()) {
      fail("point: \"index\" must be a nonnegative integer");
    }
    return Point::finite(idx.get<std::size_t>());
  }
  if (j.contains("angle")) {
    return Point::circle(number_field(j, "angle", "point"));
  }
  if (j.contains("coords")) {
    const json& coords = j.at("coords");
    if (!coords.is_array()) fail("point: \"coords\" must be an array");
    std::vector<double> values;
    values.reserve(coords.size());
    for (const json& v : coords) {
      if (!v.is_number()) fail("point: coordinates must be numbers");
      values.push_back(v.get<double>());
    }
    return Point::euclidean(std::move(values));
  }
  if (j.contains("radius")) {
    return Point::cone(point_from_json(field(j, "base", "cone point")),
                       number_field(j, "radius", "cone point"));
  }
  if (j.contains("left")) {
    return Point::product(point_from_json(field(j, "left", "product point")),
                          point_from_json(field(j, "right", "product point")));
  }
  fail("point: unrecognized shape");
}

json measure_to_json(const DiscreteMeasure& mu) {
  json support = json::array();
  for (const Point& p : mu.support()) support.push_back(point_to_json(p));
  return {{"space", space_to_json(mu.space())},
          {"support", std::move(support)},
          {"weights", mu.weights()}};
}

DiscreteMeasure measure_from_json(const json& j) {
  const Space space = space_from_json(field(j, "space", "measure"));
  const json& support_json = field(j, "support", "measure");
  const json& weights_json = field(j, "weights", "measure");
  if (!support_json.is_array() || !weights_json.is_array()) {
    fail("measure: \"support\" and \"weights\" must be arrays");
  }
  std::vector<Point> support;
  support.reserve(support_json.size());
  for (const json& p : support_json) support.push_back(point_from_json(p));
  std::vector<double> weights;
  weights.reserve(weights_json.size());
  for (const json& w : weights_json) {
    if (!w.is_number()) fail("measure: weights must be numbers");
    weights.push_back(w.get<double>());
  }
  return DiscreteMeasure(space, std::move(support), std::move(weights));
}

json plan_to_json(const TransportPlan& plan) {
  json rows = json::array();
  const std::size_t m = plan.target.size();
  for (std::size_t i = 0; i < plan.source.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m; ++j) row.push_back(plan.mass(i, j));
    rows.push_back(std::move(row));
  }
  double distance;
  if (plan.exponent == 2.0) {
    distance = std::sqrt(plan.cost);
  } else if (plan.exponent == 1.0) {
    distance = plan.cost;
  } else {
    distance = std::pow(plan.cost, 1.0 / plan.exponent);
  }
  return {{"p", plan.exponent},
          {"cost", plan.cost},
          {"distance", distance},
          {"source", measure_to_json(plan.source)},
          {"target", measure_to_json(plan.target)},
          {"coupling", std::move(rows)}};
}

json metric_report_to_json(const MetricReport& report) {
  json violations = json::array();
  for (const MetricViolation& v : report.violations) {
    violations.push_back({{"axiom", to_string(v.axiom)},
                          {"points", v.points},
                          {"magnitude", v.magnitude}});
  }
  return {{"ok", report.ok()},
          {"checked_points", report.checked_points},
          {"violations", std::move(violations)}};
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("cannot parse " + path.string() + ": " + e.what());
  }
  return j;
}

Space load_space(const std::filesystem::path& path, bool check_finite) {
  return space_from_json(load_json_file(path), check_finite);
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
  return measure_from_json(load_json_file(path));
}

}  // namespace wcone
