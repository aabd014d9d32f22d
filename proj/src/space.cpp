#include "wcone/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <utility>

#include "wcone/error.hpp"

namespace wcone {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_value(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

}  // namespace

struct Space::Rep {
  Kind kind;
  // finite
  std::size_t n = 0;
  std::vector<double> dist;  // row-major n*n
  // euclidean
  std::size_t dim = 0;
  // cone / product
  std::optional<Space> base;
  std::optional<Space> left;
  std::optional<Space> right;
};

struct Point::Rep {
  Space::Kind kind;
  std::size_t index = 0;       // finite
  double angle = 0.0;          // circle
  std::vector<double> coords;  // euclidean
  std::optional<Point> base;   // cone
  double radius = 0.0;         // cone
  std::optional<Point> left;   // product
  std::optional<Point> right;  // product
};

Space::Space(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
Point::Point(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

namespace {

std::shared_ptr<const Space::Rep> make_finite_rep(
    const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) {
    throw InvalidInput("finite space needs at least one point");
  }
  auto rep = std::make_shared<Space::Rep>();
  rep->kind = Space::Kind::finite;
  rep->n = n;
  rep->dist.reserve(n * n);
  for (const auto& row : matrix) {
    if (row.size() != n) {
      throw InvalidInput("distance matrix must be square");
    }
    for (double v : row) {
      require_finite_value(v, "distance matrix entry");
      rep->dist.push_back(v);
    }
  }
  return rep;
}

}  // namespace

Space Space::finite(const std::vector<std::vector<double>>& matrix,
                    double tol) {
  auto rep = make_finite_rep(matrix);
  const std::size_t n = rep->n;
  const auto& d = rep->dist;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i * n + i]) > tol) {
      throw InvalidInput("distance matrix has a nonzero diagonal entry");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i * n + j] < -tol) {
        throw InvalidInput("distance matrix has a negative entry");
      }
      if (std::abs(d[i * n + j] - d[j * n + i]) > tol) {
        throw InvalidInput("distance matrix is not symmetric");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k] + tol) {
          throw InvalidInput("distance matrix violates the triangle inequality");
        }
      }
    }
  }
  return Space(std::move(rep));
}

Space Space::finite_unchecked(const std::vector<std::vector<double>>& matrix) {
  return Space(make_finite_rep(matrix));
}

Space Space::circle() {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::circle;
  return Space(std::move(rep));
}

Space Space::euclidean(std::size_t dim) {
  if (dim == 0) {
    throw InvalidInput("euclidean space needs dimension >= 1");
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::euclidean;
  rep->dim = dim;
  return Space(std::move(rep));
}

Space Space::cone(Space base) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::cone;
  rep->base = std::move(base);
  return Space(std::move(rep));
}

Space Space::product(Space left, Space right) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::product;
  rep->left = std::move(left);
  rep->right = std::move(right);
  return Space(std::move(rep));
}

Space::Kind Space::kind() const { return rep_->kind; }

namespace {

void require_kind(Space::Kind actual, Space::Kind wanted, const char* what) {
  if (actual != wanted) {
    throw InvalidInput(std::string(what) + ": wrong space kind");
  }
}

}  // namespace

std::size_t Space::finite_size() const {
  require_kind(rep_->kind, Kind::finite, "finite_size");
  return rep_->n;
}

double Space::finite_distance(std::size_t i, std::size_t j) const {
  require_kind(rep_->kind, Kind::finite, "finite_distance");
  if (i >= rep_->n || j >= rep_->n) {
    throw InvalidInput("finite_distance: index out of range");
  }
  return rep_->dist[i * rep_->n + j];
}

std::size_t Space::euclidean_dim() const {
  require_kind(rep_->kind, Kind::euclidean, "euclidean_dim");
  return rep_->dim;
}

const Space& Space::base() const {
  require_kind(rep_->kind, Kind::cone, "base");
  return *rep_->base;
}

const Space& Space::left() const {
  require_kind(rep_->kind, Kind::product, "left");
  return *rep_->left;
}

const Space& Space::right() const {
  require_kind(rep_->kind, Kind::product, "right");
  return *rep_->right;
}

bool Space::contains(const Point& p) const {
  if (p.rep_->kind != rep_->kind) return false;
  switch (rep_->kind) {
    case Kind::finite:
      return p.rep_->index < rep_->n;
    case Kind::circle:
      return true;
    case Kind::euclidean:
      return p.rep_->coords.size() == rep_->dim;
    case Kind::cone:
      return rep_->base->contains(*p.rep_->base);
    case Kind::product:
      return rep_->left->contains(*p.rep_->left) &&
             rep_->right->contains(*p.rep_->right);
  }
  return false;
}

void Space::require(const Point& p) const {
  if (!contains(p)) {
    throw InvalidInput("point " + p.describe() + " does not belong to " +
                       describe());
  }
}

namespace {

double circle_arc(double a, double b) {
  // Both angles are canonical in [-pi, pi), so |a - b| < 2 pi.
  double delta = std::abs(a - b);
  return std::min(delta, 2.0 * kPi - delta);
}

}  // namespace

double Space::distance_squared(const Point& a, const Point& b) const {
  switch (rep_->kind) {
    case Kind::finite: {
      double d = rep_->dist[a.rep_->index * rep_->n + b.rep_->index];
      return d * d;
    }
    case Kind::circle: {
      double d = circle_arc(a.rep_->angle, b.rep_->angle);
      return d * d;
    }
    case Kind::euclidean: {
      double sum = 0.0;
      const auto& xa = a.rep_->coords;
      const auto& xb = b.rep_->coords;
      for (std::size_t i = 0; i < xa.size(); ++i) {
        double diff = xa[i] - xb[i];
        sum += diff * diff;
      }
      return sum;
    }
    case Kind::cone: {
      const double s = a.rep_->radius;
      const double t = b.rep_->radius;
      // Radius-0 points are all the vertex; skip the base metric entirely so
      // that identified points compare equal regardless of base coordinate.
      if (s == 0.0) return t * t;
      if (t == 0.0) return s * s;
      const double ang =
          std::min(rep_->base->distance(*a.rep_->base, *b.rep_->base), kPi);
      const double d2 = s * s + t * t - 2.0 * s * t * std::cos(ang);
      return d2 > 0.0 ? d2 : 0.0;
    }
    case Kind::product: {
      return rep_->left->distance_squared(*a.rep_->left, *b.rep_->left) +
             rep_->right->distance_squared(*a.rep_->right, *b.rep_->right);
    }
  }
  throw Error("unreachable space kind");
}

double Space::distance(const Point& a, const Point& b) const {
  switch (rep_->kind) {
    case Kind::finite:
      return rep_->dist[a.rep_->index * rep_->n + b.rep_->index];
    case Kind::circle:
      return circle_arc(a.rep_->angle, b.rep_->angle);
    default:
      return std::sqrt(distance_squared(a, b));
  }
}

Point Space::origin() const {
  switch (rep_->kind) {
    case Kind::finite:
      return Point::finite(0);
    case Kind::circle:
      return Point::circle(0.0);
    case Kind::euclidean:
      return Point::euclidean(std::vector<double>(rep_->dim, 0.0));
    case Kind::cone:
      return Point::cone(rep_->base->origin(), 0.0);
    case Kind::product:
      return Point::product(rep_->left->origin(), rep_->right->origin());
  }
  throw Error("unreachable space kind");
}

bool Space::same_structure(const Space& other) const {
  if (rep_ == other.rep_) return true;
  if (rep_->kind != other.rep_->kind) return false;
  switch (rep_->kind) {
    case Kind::finite:
      return rep_->n == other.rep_->n && rep_->dist == other.rep_->dist;
    case Kind::circle:
      return true;
    case Kind::euclidean:
      return rep_->dim == other.rep_->dim;
    case Kind::cone:
      return rep_->base->same_structure(*other.rep_->base);
    case Kind::product:
      return rep_->left->same_structure(*other.rep_->left) &&
             rep_->right->same_structure(*other.rep_->right);
  }
  return false;
}

std::string Space::describe() const {
  switch (rep_->kind) {
    case Kind::finite:
      return "finite(" + std::to_string(rep_->n) + ")";
    case Kind::circle:
      return "circle";
    case Kind::euclidean:
      return "euclidean(" + std::to_string(rep_->dim) + ")";
    case Kind::cone:
      return "cone(" + rep_->base->describe() + ")";
    case Kind::product:
      return "product(" + rep_->left->describe() + ", " +
             rep_->right->describe() + ")";
  }
  return "unknown";
}

Point Point::finite(std::size_t index) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Space::Kind::finite;
  rep->index = index;
  return Point(std::move(rep));
}

Point Point::circle(double angle) {
  require_finite_value(angle, "circle angle");
  double canonical = std::remainder(angle, 2.0 * kPi);  // in [-pi, pi]
  if (canonical == kPi) canonical = -kPi;
  auto rep = std::make_shared<Rep>();
  rep->kind = Space::Kind::circle;
  rep->angle = canonical;
  return Point(std::move(rep));
}

Point Point::euclidean(std::vector<double> coords) {
  if (coords.empty()) {
    throw InvalidInput("euclidean point needs at least one coordinate");
  }
  for (double c : coords) require_finite_value(c, "coordinate");
  auto rep = std::make_shared<Rep>();
  rep->kind = Space::Kind::euclidean;
  rep->coords = std::move(coords);
  return Point(std::move(rep));
}

Point Point::cone(Point base, double radius) {
  require_finite_value(radius, "cone radius");
  if (radius < 0.0) {
    throw InvalidInput("cone radius must be nonnegative");
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = Space::Kind::cone;
  rep->base = std::move(base);
  rep->radius = radius;
  return Point(std::move(rep));
}

Point Point::product(Point left, Point right) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Space::Kind::product;
  rep->left = std::move(left);
  rep->right = std::move(right);
  return Point(std::move(rep));
}

Space::Kind Point::kind() const { return rep_->kind; }

namespace {

void require_point_kind(Space::Kind actual, Space::Kind wanted,
                        const char* what) {
  if (actual != wanted) {
    throw InvalidInput(std::string(what) + ": wrong point kind");
  }
}

}  // namespace

std::size_t Point::index() const {
  require_point_kind(rep_->kind, Space::Kind::finite, "index");
  return rep_->index;
}

double Point::angle() const {
  require_point_kind(rep_->kind, Space::Kind::circle, "angle");
  return rep_->angle;
}

std::span<const double> Point::coords() const {
  require_point_kind(rep_->kind, Space::Kind::euclidean, "coords");
  return rep_->coords;
}

const Point& Point::base() const {
  require_point_kind(rep_->kind, Space::Kind::cone, "base");
  return *rep_->base;
}

double Point::radius() const {
  require_point_kind(rep_->kind, Space::Kind::cone, "radius");
  return rep_->radius;
}

const Point& Point::left() const {
  require_point_kind(rep_->kind, Space::Kind::product, "left");
  return *rep_->left;
}

const Point& Point::right() const {
  require_point_kind(rep_->kind, Space::Kind::product, "right");
  return *rep_->right;
}

std::string Point::describe() const {
  std::ostringstream out;
  switch (rep_->kind) {
    case Space::Kind::finite:
      out << "#" << rep_->index;
      break;
    case Space::Kind::circle:
      out << "angle " << rep_->angle;
      break;
    case Space::Kind::euclidean: {
      out << "(";
      for (std::size_t i = 0; i < rep_->coords.size(); ++i) {
        if (i) out << ", ";
        out << rep_->coords[i];
      }
      out << ")";
      break;
    }
    case Space::Kind::cone:
      out << "(" << rep_->base->describe() << "; r=" << rep_->radius << ")";
      break;
    case Space::Kind::product:
      out << "[" << rep_->left->describe() << " | " << rep_->right->describe()
          << "]";
      break;
  }
  return out.str();
}

double comparison_angle(const Space& space, const Point& x, const Point& y,
                        const Point& z) {
  space.require(x);
  space.require(y);
  space.require(z);
  const double dxy = space.distance(x, y);
  const double dyz = space.distance(y, z);
  if (dxy <= 0.0 || dyz <= 0.0) {
    throw InvalidInput(
        "comparison_angle: the outer points must not coincide with the apex");
  }
  const double dzx = space.distance(z, x);
  double cosine = (dxy * dxy + dyz * dyz - dzx * dzx) / (2.0 * dxy * dyz);
  cosine = std::clamp(cosine, -1.0, 1.0);
  return std::acos(cosine);
}

std::vector<std::size_t> antipodal_set(const Space& space, const Point& xi,
                                       std::span<const Point> candidates,
                                       double tol) {
  space.require(xi);
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    space.require(candidates[i]);
    if (space.distance(xi, candidates[i]) >= kPi - tol) {
      result.push_back(i);
    }
  }
  return result;
}

std::string to_string(MetricAxiom axiom) {
  switch (axiom) {
    case MetricAxiom::nonnegativity:
      return "nonnegativity";
    case MetricAxiom::identity:
      return "identity";
    case MetricAxiom::symmetry:
      return "symmetry";
    case MetricAxiom::triangle:
      return "triangle";
  }
  return "unknown";
}

MetricReport validate_metric(const Space& space, std::span<const Point> sample,
                             double tol) {
  std::vector<Point> points;
  if (space.kind() == Space::Kind::finite) {
    // The whole space is enumerable; ignore the sample and check all of it.
    points.reserve(space.finite_size());
    for (std::size_t i = 0; i < space.finite_size(); ++i) {
      points.push_back(Point::finite(i));
    }
  } else {
    if (sample.empty()) {
      throw InvalidInput("validate_metric: sample must be nonempty");
    }
    points.assign(sample.begin(), sample.end());
    for (const auto& p : points) space.require(p);
  }

  const std::size_t n = points.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = space.distance(points[i], points[j]);
    }
  }

  MetricReport report;
  report.checked_points = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i * n + i]) > tol) {
      report.violations.push_back(
          {MetricAxiom::identity, {i, i, i}, std::abs(d[i * n + i])});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] < -tol || d[j * n + i] < -tol) {
        report.violations.push_back(
            {MetricAxiom::nonnegativity,
             {i, j, j},
             -std::min(d[i * n + j], d[j * n + i])});
      }
      const double gap = std::abs(d[i * n + j] - d[j * n + i]);
      if (gap > tol) {
        report.violations.push_back({MetricAxiom::symmetry, {i, j, j}, gap});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double excess = d[i * n + k] - d[i * n + j] - d[j * n + k];
        if (excess > tol) {
          report.violations.push_back(
              {MetricAxiom::triangle, {i, j, k}, excess});
        }
      }
    }
  }
  return report;
}

}  // namespace wcone
