#include "wcone/splitting.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wcone/error.hpp"

namespace wcone {

namespace {

std::size_t require_euclidean_factor(const Space& space, const char* what) {
  const auto dim = euclidean_factor_dim(space);
  if (!dim) {
    throw InvalidInput(std::string(what) +
                       " requires a Euclidean factor, got " + space.describe());
  }
  return *dim;
}

Point shift_point(const Space& space, const Point& p,
                  std::span<const double> shift) {
  if (space.kind() == Space::Kind::euclidean) {
    std::vector<double> coords(p.coords().begin(), p.coords().end());
    for (std::size_t k = 0; k < coords.size(); ++k) coords[k] += shift[k];
    return Point::euclidean(std::move(coords));
  }
  // Product(Y, Euclidean(k)): shift the right factor only.
  const Point& right = p.right();
  std::vector<double> coords(right.coords().begin(), right.coords().end());
  for (std::size_t k = 0; k < coords.size(); ++k) coords[k] += shift[k];
  return Point::product(p.left(), Point::euclidean(std::move(coords)));
}

double max_abs(std::span<const double> v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

}  // namespace

DiscreteMeasure translate(const DiscreteMeasure& mu,
                          std::span<const double> shift) {
  const std::size_t dim = require_euclidean_factor(mu.space(), "translate");
  if (shift.size() != dim) {
    throw InvalidInput("translate: shift has length " +
                       std::to_string(shift.size()) + ", factor has dimension " +
                       std::to_string(dim));
  }
  for (double s : shift) {
    if (!std::isfinite(s)) throw InvalidInput("translate: shift must be finite");
  }
  const Space& space = mu.space();
  return mu.pushforward(
      [&space, shift](const Point& p) { return shift_point(space, p, shift); },
      space);
}

MeanDecomposition decompose(const DiscreteMeasure& mu) {
  std::vector<double> mean = mu.mean();
  std::vector<double> negated(mean.size());
  for (std::size_t k = 0; k < mean.size(); ++k) negated[k] = -mean[k];
  return {translate(mu, negated), std::move(mean)};
}

double splitting_residual(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          std::span<const double> h,
                          std::span<const double> hhat, double mean_tol) {
  if (!mu.space().same_structure(nu.space())) {
    throw InvalidInput("splitting_residual: measures on different spaces");
  }
  if (max_abs(mu.mean()) > mean_tol || max_abs(nu.mean()) > mean_tol) {
    throw InvalidInput("splitting_residual: measures must have zero mean");
  }
  if (h.size() != hhat.size()) {
    throw InvalidInput("splitting_residual: shift dimensions differ");
  }
  const double lhs = optimal_plan(translate(mu, h), translate(nu, hhat)).cost;
  double shift_gap_sq = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double diff = h[k] - hhat[k];
    shift_gap_sq += diff * diff;
  }
  const double rhs = optimal_plan(mu, nu).cost + shift_gap_sq;
  return lhs - rhs;
}

DiameterCheck diameter_bound_check(const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu, double tol) {
  if (mu.space().kind() != Space::Kind::euclidean) {
    throw InvalidInput("diameter_bound_check requires Euclidean measures, got " +
                       mu.space().describe());
  }
  if (!mu.space().same_structure(nu.space())) {
    throw InvalidInput("diameter_bound_check: measures on different spaces");
  }
  const Point origin = mu.space().origin();
  for (const DiscreteMeasure* m : {&mu, &nu}) {
    if (max_abs(m->mean()) > tol) {
      throw InvalidInput("diameter_bound_check: measures must have zero mean");
    }
    if (std::abs(m->second_moment(origin) - 1.0) > tol) {
      throw InvalidInput(
          "diameter_bound_check: measures must have unit second moment");
    }
  }
  DiameterCheck check;
  check.w2sq = optimal_plan(mu, nu).cost;
  check.bound_ok = check.w2sq <= 2.0 + tol;
  return check;
}

}  // namespace wcone
