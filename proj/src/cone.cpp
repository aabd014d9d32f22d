#include "wcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "wcone/error.hpp"

namespace wcone {

namespace {

constexpr double kPi = std::numbers::pi;

const Space& require_cone(const Space& space, const char* what) {
  if (space.kind() != Space::Kind::cone) {
    throw InvalidInput(std::string(what) + " requires a cone space, got " +
                       space.describe());
  }
  return space;
}

double require_unit_direction(const DiscreteMeasure& mu, double unit_tol,
                              const char* what) {
  const double radial = wasserstein_distance(vertex_dirac(mu.space()), mu);
  if (std::abs(radial - 1.0) > unit_tol) {
    throw InvalidInput(std::string(what) +
                       " requires a unit direction (distance from the vertex " +
                       std::to_string(radial) + ")");
  }
  return radial;
}

}  // namespace

Point cone_vertex(const Space& cone_space) {
  require_cone(cone_space, "cone_vertex");
  return cone_space.origin();
}

DiscreteMeasure vertex_dirac(const Space& cone_space) {
  return DiscreteMeasure::dirac(cone_space, cone_vertex(cone_space));
}

Point scale_point(const Point& p, double factor) {
  if (p.kind() != Space::Kind::cone) {
    throw InvalidInput("scale_point requires a cone point");
  }
  if (!std::isfinite(factor) || factor < 0.0) {
    throw InvalidInput("scale factor must be finite and nonnegative");
  }
  return Point::cone(p.base(), factor * p.radius());
}

std::function<Point(const Point&)> scale_map(double factor) {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw InvalidInput("scale factor must be finite and nonnegative");
  }
  return [factor](const Point& p) { return scale_point(p, factor); };
}

DiscreteMeasure radial_geodesic(const DiscreteMeasure& mu, double factor) {
  require_cone(mu.space(), "radial_geodesic");
  return mu.pushforward(scale_map(factor), mu.space());
}

ConeIdentityTerms cone_identity_terms(const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu, double s,
                                      double t) {
  require_cone(mu.space(), "cone_identity_terms");
  if (!mu.space().same_structure(nu.space())) {
    throw InvalidInput("cone_identity_terms: measures on different spaces");
  }
  if (!std::isfinite(s) || !std::isfinite(t) || s < 0.0 || t < 0.0) {
    throw InvalidInput("cone_identity_terms: scales must be >= 0");
  }
  const DiscreteMeasure delta = vertex_dirac(mu.space());
  const double scaled =
      optimal_plan(radial_geodesic(mu, s), radial_geodesic(nu, t)).cost;
  const double w2sq = optimal_plan(mu, nu).cost;
  const double mu_moment = optimal_plan(delta, mu).cost;
  const double nu_moment = optimal_plan(delta, nu).cost;
  const double predicted =
      s * t * w2sq + (s - t) * (s * mu_moment - t * nu_moment);
  return {scaled, predicted};
}

double cone_identity_residual(const DiscreteMeasure& mu,
                              const DiscreteMeasure& nu, double s, double t) {
  const ConeIdentityTerms terms = cone_identity_terms(mu, nu, s, t);
  return terms.scaled_w2sq - terms.predicted_w2sq;
}

double direction_angle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       double unit_tol) {
  require_cone(mu.space(), "direction_angle");
  if (!mu.space().same_structure(nu.space())) {
    throw InvalidInput("direction_angle: measures on different spaces");
  }
  require_unit_direction(mu, unit_tol, "direction_angle");
  require_unit_direction(nu, unit_tol, "direction_angle");
  const double w2sq = optimal_plan(mu, nu).cost;
  const double cosine = std::clamp(1.0 - 0.5 * w2sq, -1.0, 1.0);
  return std::acos(cosine);
}

double vertex_cone_distance(const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, double s, double t,
                            double unit_tol) {
  if (!std::isfinite(s) || !std::isfinite(t) || s < 0.0 || t < 0.0) {
    throw InvalidInput("vertex_cone_distance: radii must be >= 0");
  }
  const double ang = direction_angle(mu, nu, unit_tol);
  const double d2 = s * s + t * t - 2.0 * s * t * std::cos(ang);
  return std::sqrt(d2 > 0.0 ? d2 : 0.0);
}

DiscreteMeasure unit_embed(const DiscreteMeasure& base_measure) {
  const Space target = Space::cone(base_measure.space());
  return base_measure.pushforward(
      [](const Point& y) { return Point::cone(y, 1.0); }, target);
}

EmbeddingGapRecord embedding_counterexample(double theta) {
  if (!(theta > 0.0) || !(theta < kPi / 3.0)) {
    throw InvalidInput("embedding_counterexample requires theta in (0, pi/3)");
  }
  const Space circle = Space::circle();
  const DiscreteMeasure mu(
      circle, {Point::circle(0.0), Point::circle(kPi - 2.0 * theta)},
      {0.5, 0.5});
  const DiscreteMeasure nu(circle, {Point::circle(theta), Point::circle(kPi)},
                           {0.5, 0.5});

  EmbeddingGapRecord record;
  record.theta = theta;
  record.w2sq_base = optimal_plan(mu, nu).cost;
  record.w2_base = std::sqrt(record.w2sq_base);

  const double cone_w2sq = optimal_plan(unit_embed(mu), unit_embed(nu)).cost;
  record.cos_angle_cone = std::clamp(1.0 - 0.5 * cone_w2sq, -1.0, 1.0);
  record.angle = std::acos(record.cos_angle_cone);
  return record;
}

NonBranchingResult non_branching_at_vertex(const Space& base,
                                           std::span<const Point> candidates,
                                           double tol) {
  NonBranchingResult result;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto antipodes = antipodal_set(base, candidates[i], candidates, tol);
    // The point itself can never be its own antipode (distance 0 < pi), so
    // any two hits witness genuinely distinct antipodal directions.
    if (antipodes.size() >= 2) {
      result.non_branching = false;
      result.witness = AntipodalWitness{antipodes[0], antipodes[1]};
      return result;
    }
  }
  return result;
}

BranchingDemo branching_geodesic_demo() {
  // Three directions, every pair at angular distance pi: from the tip of one
  // ray, mass can descend to the vertex and climb either of the other two.
  const Space base = Space::finite({{0.0, kPi, kPi},
                                    {kPi, 0.0, kPi},
                                    {kPi, kPi, 0.0}});
  const Space cone = Space::cone(base);

  const Point tip_a = Point::cone(Point::finite(0), 1.0);
  const Point tip_b = Point::cone(Point::finite(1), 1.0);
  const Point tip_c = Point::cone(Point::finite(2), 1.0);

  const DiscreteMeasure start = DiscreteMeasure::dirac(cone, tip_a);
  const DiscreteMeasure end(cone, {tip_b, tip_c}, {0.5, 0.5});
  const DiscreteMeasure mid = vertex_dirac(cone);

  BranchingDemo demo;
  demo.w2_endpoints = wasserstein_distance(start, end);
  demo.w2_start_mid = wasserstein_distance(start, mid);
  demo.w2_mid_end = wasserstein_distance(mid, end);
  const Point vertex = cone_vertex(cone);
  for (const Point& p : {tip_a, tip_b, tip_c}) {
    demo.support_to_vertex.push_back(cone.distance(vertex, p));
  }
  const std::vector<Point> directions = {Point::finite(0), Point::finite(1),
                                         Point::finite(2)};
  demo.base_branching = non_branching_at_vertex(base, directions);
  return demo;
}

}  // namespace wcone
