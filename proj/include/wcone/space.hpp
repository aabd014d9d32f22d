#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wcone {

class Point;

/// Immutable description of a metric space. Spaces compose: a space is one of
///   - finite:    n points with an explicit symmetric distance matrix,
///   - circle:    S^1 with arc-length distance (diameter pi),
///   - euclidean: R^k with the Euclidean distance,
///   - cone:      the metric cone over a base space, with the law-of-cosines
///                distance d((xi,s),(eta,t))^2 = s^2 + t^2
///                - 2 s t cos(min{d_base(xi,eta), pi}),
///   - product:   l2 product of two spaces.
///
/// Handles are cheap to copy (shared immutable representation).
class Space {
 public:
  enum class Kind { finite, circle, euclidean, cone, product };

  /// Finite space from a full distance matrix. Checks squareness, finiteness,
  /// zero diagonal, symmetry, nonnegativity and the triangle inequality
  /// exhaustively (tolerance `tol`); throws InvalidInput on violation.
  static Space finite(const std::vector<std::vector<double>>& matrix,
                      double tol = 1e-12);

  /// Finite space that skips the metric axioms (squareness and finiteness are
  /// still enforced). Exists so that a questionable matrix can be loaded and
  /// then *reported on* via validate_metric instead of rejected at the door.
  static Space finite_unchecked(const std::vector<std::vector<double>>& matrix);

  static Space circle();
  static Space euclidean(std::size_t dim);
  static Space cone(Space base);
  static Space product(Space left, Space right);

  Kind kind() const;

  /// Number of points (finite spaces only).
  std::size_t finite_size() const;
  /// Matrix entry d(i, j) (finite spaces only).
  double finite_distance(std::size_t i, std::size_t j) const;

  /// Dimension (euclidean spaces only).
  std::size_t euclidean_dim() const;

  /// Base space (cone spaces only).
  const Space& base() const;

  /// Factors (product spaces only).
  const Space& left() const;
  const Space& right() const;

  /// True iff `p` is a structurally valid point of this space.
  bool contains(const Point& p) const;
  /// Throws InvalidInput unless contains(p).
  void require(const Point& p) const;

  /// Metric distance. Points must belong to this space.
  double distance(const Point& a, const Point& b) const;
  /// Squared distance, computed without a sqrt/square round trip where the
  /// geometry allows it (euclidean, cone, product).
  double distance_squared(const Point& a, const Point& b) const;

  /// A canonical base point: index 0, angle 0, the zero vector, the cone
  /// vertex, or the pair of factor origins.
  Point origin() const;

  /// True iff both handles describe the same space (same shape and, for
  /// finite spaces, the same matrix).
  bool same_structure(const Space& other) const;

  /// Short human-readable shape, e.g. "cone(circle)".
  std::string describe() const;

  struct Rep;  // definition is internal to space.cpp

 private:
  explicit Space(std::shared_ptr<const Rep> rep);
  std::shared_ptr<const Rep> rep_;

  friend class Point;
};

/// Immutable point of some space kind. A point does not retain the space it
/// came from; Space::contains/require perform the structural check.
class Point {
 public:
  /// Point of a finite space by index.
  static Point finite(std::size_t index);
  /// Circle point; the angle is canonicalized into [-pi, pi).
  static Point circle(double angle);
  static Point euclidean(std::vector<double> coords);
  /// Cone point (base point, radius >= 0). All radius-0 points are the
  /// vertex: they compare at distance 0 regardless of base point.
  static Point cone(Point base, double radius);
  static Point product(Point left, Point right);

  Space::Kind kind() const;

  std::size_t index() const;                // finite
  double angle() const;                     // circle
  std::span<const double> coords() const;   // euclidean
  const Point& base() const;                // cone
  double radius() const;                    // cone
  const Point& left() const;                // product
  const Point& right() const;               // product

  std::string describe() const;

  struct Rep;  // definition is internal to space.cpp

 private:
  explicit Point(std::shared_ptr<const Rep> rep);
  std::shared_ptr<const Rep> rep_;

  friend class Space;
};

/// Comparison angle at `y` of the triangle (x, y, z):
///   arccos((d(x,y)^2 + d(y,z)^2 - d(z,x)^2) / (2 d(x,y) d(y,z))),
/// with the cosine clamped into [-1, 1] before arccos. Throws InvalidInput
/// when x or z coincides with y (zero side).
double comparison_angle(const Space& space, const Point& x, const Point& y,
                        const Point& z);

/// Indices of the candidates lying at distance >= pi - tol from `xi`.
std::vector<std::size_t> antipodal_set(const Space& space, const Point& xi,
                                       std::span<const Point> candidates,
                                       double tol = 1e-9);

enum class MetricAxiom { nonnegativity, identity, symmetry, triangle };

std::string to_string(MetricAxiom axiom);

struct MetricViolation {
  MetricAxiom axiom;
  /// Point indices involved (into the checked point list); unused slots
  /// repeat the last meaningful index.
  std::array<std::size_t, 3> points;
  /// Size of the violation (distance from satisfying the axiom).
  double magnitude = 0.0;
};

struct MetricReport {
  std::vector<MetricViolation> violations;
  std::size_t checked_points = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks the metric axioms on a point set: the full point set for finite
/// spaces (the sample is ignored there), the given nonempty sample otherwise.
/// All ordered pairs and triples are examined.
MetricReport validate_metric(const Space& space, std::span<const Point> sample,
                             double tol = 1e-12);

}  // namespace wcone
