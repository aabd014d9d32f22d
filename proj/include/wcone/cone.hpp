#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wcone/measure.hpp"
#include "wcone/transport.hpp"

namespace wcone {

/// The vertex (apex) of a cone space: radius 0 over the base origin. Every
/// radius-0 point is identified with it.
Point cone_vertex(const Space& cone_space);

/// Unit mass at the cone vertex.
DiscreteMeasure vertex_dirac(const Space& cone_space);

/// Radial dilation of a single cone point: (y, t) -> (y, factor * t).
/// Requires factor >= 0. The vertex is a fixed point for every factor.
Point scale_point(const Point& p, double factor);

/// The dilation as a reusable pointwise map.
std::function<Point(const Point&)> scale_map(double factor);

/// Pushforward of a cone measure under radial dilation. The curve
/// s -> radial_geodesic(mu, s) is the unit-speed-up-to-reparametrization ray
/// through mu: W2(Psi_s mu, Psi_t mu) = |s - t| * W2(vertex, mu).
DiscreteMeasure radial_geodesic(const DiscreteMeasure& mu, double factor);

/// Both sides of the dilation distance identity
///   W2(Psi_s mu, Psi_t nu)^2 =
///     s t W2(mu, nu)^2 + (s - t) (s W2(delta, mu)^2 - t W2(delta, nu)^2),
/// where delta is the vertex Dirac. All four transport problems are solved
/// exactly.
struct ConeIdentityTerms {
  /// Solver value of W2(Psi_s mu, Psi_t nu)^2.
  double scaled_w2sq = 0.0;
  /// The right-hand side assembled from W2(mu, nu)^2 and the second moments.
  double predicted_w2sq = 0.0;
};

ConeIdentityTerms cone_identity_terms(const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu, double s,
                                      double t);

/// Signed residual scaled_w2sq - predicted_w2sq (not normalized).
double cone_identity_residual(const DiscreteMeasure& mu,
                              const DiscreteMeasure& nu, double s, double t);

/// Angle between the rays through two unit-distance directions:
///   arccos(1 - W2(mu, nu)^2 / 2), clamped into [0, pi].
/// Requires W2(vertex, mu) and W2(vertex, nu) to equal 1 within unit_tol.
double direction_angle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       double unit_tol = 1e-9);

/// Distance in the cone over the space of directions: the law of cosines
/// sqrt(s^2 + t^2 - 2 s t cos(direction_angle)) applied to two unit
/// directions placed at radii s, t >= 0. Coincides with
/// W2(Psi_s mu, Psi_t nu).
double vertex_cone_distance(const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, double s, double t,
                            double unit_tol = 1e-9);

/// Embeds a measure on Y into Cone(Y) at radius 1: y -> (y, 1). The image
/// is always at W2-distance exactly 1 from the vertex.
DiscreteMeasure unit_embed(const DiscreteMeasure& base_measure);

/// One grid point of the circle embedding comparison: two 2-atom measures on
/// the circle, at base distance W2 = theta * sqrt(5/2), whose unit embeddings
/// subtend cos(angle) = (cos theta + cos 2 theta) / 2. The two quantities
/// W2 and angle do NOT agree, which is the point: the radius-1 embedding of
/// the circle's measure space into the cone's direction space is not
/// distance-preserving. Requires 0 < theta < pi/3 (where both closed forms
/// stay in the comparable range).
struct EmbeddingGapRecord {
  double theta = 0.0;
  /// Solver value of W2(mu, nu)^2 on the circle.
  double w2sq_base = 0.0;
  /// sqrt of the above.
  double w2_base = 0.0;
  /// Solver value of cos(direction_angle) of the unit embeddings.
  double cos_angle_cone = 0.0;
  /// arccos of the above.
  double angle = 0.0;
};

EmbeddingGapRecord embedding_counterexample(double theta);

struct AntipodalWitness {
  std::size_t first = 0;
  std::size_t second = 0;
};

struct NonBranchingResult {
  /// True iff no candidate has two or more antipodes among the candidates.
  bool non_branching = true;
  /// When false: indices (into candidates) of two antipodes of some point.
  std::optional<AntipodalWitness> witness;
};

/// Geodesics through the cone vertex branch exactly when some direction has
/// more than one antipodal direction. This scans the candidate directions
/// for such a pair.
NonBranchingResult non_branching_at_vertex(const Space& base,
                                           std::span<const Point> candidates,
                                           double tol = 1e-9);

/// A worked branching example: the cone over three points with pairwise base
/// distance pi. Two distinct unit-speed geodesics connect the Dirac at one
/// ray to the balanced measure on the other two, both passing through the
/// vertex at the midpoint.
struct BranchingDemo {
  double w2_endpoints = 0.0;              // distance of the two endpoints (2)
  double w2_start_mid = 0.0;              // start to vertex Dirac (1)
  double w2_mid_end = 0.0;                // vertex Dirac to end (1)
  std::vector<double> support_to_vertex;  // cone radii of all atoms (all 1)
  NonBranchingResult base_branching;      // witness of the antipodal pair
};

BranchingDemo branching_geodesic_demo();

}  // namespace wcone
