#include "wcone/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "wcone/error.hpp"
#include "wcone/transport.hpp"

using namespace wcone;
using nlohmann::json;

namespace {
constexpr double kPi = std::numbers::pi;

Space nested_space() {
  return Space::product(Space::cone(Space::circle()), Space::euclidean(2));
}
}  // namespace

TEST_CASE("space round trip across all kinds") {
  const std::vector<Space> spaces = {
      Space::finite({{0.0, 1.5}, {1.5, 0.0}}),
      Space::circle(),
      Space::euclidean(3),
      Space::cone(Space::circle()),
      nested_space(),
  };
  for (const Space& s : spaces) {
    const Space back = space_from_json(space_to_json(s));
    CHECK(back.same_structure(s));
  }
}

TEST_CASE("finite space json preserves the matrix exactly") {
  const Space s = Space::finite({{0.0, 0.25, 1.125},
                                 {0.25, 0.0, 1.0},
                                 {1.125, 1.0, 0.0}});
  const json j = space_to_json(s);
  CHECK(j.at("type") == "finite");
  const Space back = space_from_json(j);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(back.finite_distance(i, k) == s.finite_distance(i, k));
}

TEST_CASE("space parsing can defer metric validation") {
  json j;
  j["type"] = "finite";
  j["dist"] = {{0.0, 1.0}, {2.0, 0.0}};  // asymmetric
  CHECK_THROWS_AS(space_from_json(j), InvalidInput);
  const Space lax = space_from_json(j, /*check_finite=*/false);
  CHECK(lax.finite_distance(0, 1) == 1.0);
  CHECK(lax.finite_distance(1, 0) == 2.0);
  const MetricReport report = validate_metric(lax, {});
  CHECK_FALSE(report.ok());
}

TEST_CASE("point round trip across all kinds") {
  const Space fin = Space::finite({{0.0, 1.0}, {1.0, 0.0}});
  const std::vector<std::pair<Space, Point>> cases = {
      {fin, Point::finite(1)},
      {Space::circle(), Point::circle(-2.75)},
      {Space::euclidean(2), Point::euclidean({0.1, -3.5})},
      {Space::cone(Space::circle()), Point::cone(Point::circle(1.25), 2.5)},
      {nested_space(),
       Point::product(Point::cone(Point::circle(0.5), 1.0),
                      Point::euclidean({4.0, 5.0}))},
  };
  for (const auto& [space, p] : cases) {
    const Point back = point_from_json(point_to_json(p));
    CHECK(space.distance(back, p) == 0.0);
  }
}

TEST_CASE("point coordinates survive json exactly") {
  const double x = 0.1 + 0.2;  // not representable as 0.3
  const Point p = Point::euclidean({x, 1e-300});
  const Point back = point_from_json(point_to_json(p));
  CHECK(back.coords()[0] == x);
  CHECK(back.coords()[1] == 1e-300);
}

TEST_CASE("measure round trip preserves weights and support") {
  const Space cone = Space::cone(Space::circle());
  const DiscreteMeasure mu(cone,
                           {Point::cone(Point::circle(0.0), 1.0),
                            Point::cone(Point::circle(kPi / 3.0), 0.75)},
                           {1.0 / 3.0, 2.0 / 3.0});
  const json j = measure_to_json(mu);
  const DiscreteMeasure back = measure_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back.weight(0) == mu.weight(0));
  CHECK(back.weight(1) == mu.weight(1));
  CHECK(back.point(1).radius() == 0.75);
  CHECK(back.space().same_structure(cone));
}

TEST_CASE("plan json reports cost, distance and marginals") {
  const Space e1 = Space::euclidean(1);
  const DiscreteMeasure mu(
      e1, {Point::euclidean({0.0}), Point::euclidean({1.0})}, {0.5, 0.5});
  const DiscreteMeasure nu = DiscreteMeasure::dirac(e1, Point::euclidean({2.0}));
  const TransportPlan plan = optimal_plan(mu, nu);
  const json j = plan_to_json(plan);
  CHECK(j.at("p") == 2.0);
  CHECK(j.at("cost").get<double>() == plan.cost);
  CHECK(j.at("distance").get<double>() == std::sqrt(plan.cost));
  CHECK(j.at("coupling").size() == 2);
  CHECK(j.at("coupling")[0].size() == 1);
  CHECK(j.at("source").at("weights").size() == 2);
  CHECK(j.at("target").at("weights").size() == 1);
}

TEST_CASE("metric report json lists violations") {
  json j;
  j["type"] = "finite";
  j["dist"] = {{0.0, 1.0}, {2.0, 0.0}};
  const Space lax = space_from_json(j, /*check_finite=*/false);
  const json report = metric_report_to_json(validate_metric(lax, {}));
  CHECK(report.at("ok") == false);
  CHECK(report.at("checked_points") == 2);
  REQUIRE(report.at("violations").size() >= 1);
  CHECK(report.at("violations")[0].contains("axiom"));
  CHECK(report.at("violations")[0].contains("magnitude"));
}

TEST_CASE("parsing errors are reported as invalid input") {
  CHECK_THROWS_AS(space_from_json(json{{"type", "hyperbolic"}}), InvalidInput);
  CHECK_THROWS_AS(space_from_json(json{{"dim", 2}}), InvalidInput);

  json bad_weights;
  bad_weights["space"] = space_to_json(Space::euclidean(1));
  bad_weights["support"] = {point_to_json(Point::euclidean({0.0}))};
  bad_weights["weights"] = {0.5};  // does not sum to one
  CHECK_THROWS_AS(measure_from_json(bad_weights), InvalidInput);

  json negative;
  negative["space"] = space_to_json(Space::euclidean(1));
  negative["support"] = {point_to_json(Point::euclidean({0.0})),
                         point_to_json(Point::euclidean({1.0}))};
  negative["weights"] = {1.5, -0.5};
  CHECK_THROWS_AS(measure_from_json(negative), InvalidInput);
}

TEST_CASE("file loading distinguishes missing from malformed") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/space.json"), InvalidInput);

  const std::string path = "json_test_malformed.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_json_file(path), InvalidInput);
  std::remove(path.c_str());
}

TEST_CASE("measure survives a file round trip") {
  const Space prod = nested_space();
  const DiscreteMeasure mu(
      prod,
      {Point::product(Point::cone(Point::circle(0.3), 1.5),
                      Point::euclidean({-1.0, 2.0})),
       Point::product(Point::cone(Point::circle(-1.1), 0.25),
                      Point::euclidean({0.5, 0.5}))},
      {0.6, 0.4});
  const std::string path = "json_test_measure.json";
  {
    std::ofstream out(path);
    out << measure_to_json(mu).dump(2);
  }
  const DiscreteMeasure back = load_measure(path);
  CHECK(back.size() == 2);
  CHECK(back.weight(0) == 0.6);
  CHECK(back.point(0).left().radius() == 1.5);
  CHECK(back.point(0).right().coords()[1] == 2.0);
  std::remove(path.c_str());
}
