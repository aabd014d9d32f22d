#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wcone/space.hpp"

namespace wcone {

/// Finitely supported probability measure on a Space.
///
/// Construction merges support points lying within kMergeTol of each other
/// (adding their weights), requires every weight to be strictly positive, and
/// requires the total mass to equal 1 within kMassTol.
class DiscreteMeasure {
 public:
  static constexpr double kMergeTol = 1e-12;
  static constexpr double kMassTol = 1e-12;

  DiscreteMeasure(Space space, std::vector<Point> support,
                  std::vector<double> weights);

  /// Unit mass at a single point.
  static DiscreteMeasure dirac(Space space, Point x);

  const Space& space() const { return space_; }
  std::size_t size() const { return support_.size(); }
  const std::vector<Point>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  const Point& point(std::size_t i) const { return support_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Image measure under a pointwise map into `target`. Weights follow their
  /// points; images that collide are merged, so total mass is preserved.
  DiscreteMeasure pushforward(const std::function<Point(const Point&)>& map,
                              Space target) const;

  /// Sum of w_i * d(base, x_i)^2.
  double second_moment(const Point& base) const;

  /// Weighted mean of the Euclidean part of the support (compensated
  /// summation). Requires the space to have a Euclidean factor; see
  /// euclidean_factor_dim.
  std::vector<double> mean() const;

 private:
  Space space_;
  std::vector<Point> support_;
  std::vector<double> weights_;
};

/// Dimension of the linear part of a space: k for Euclidean(k), k for
/// Product(Y, Euclidean(k)), nullopt otherwise.
std::optional<std::size_t> euclidean_factor_dim(const Space& space);

/// Coordinates of the Euclidean part of a point of such a space.
std::span<const double> euclidean_projection(const Space& space,
                                             const Point& p);

/// Quantile function of the standard normal distribution, odd-symmetric about
/// p = 1/2 (normal_quantile(1 - p) == -normal_quantile(p) exactly).
double normal_quantile(double p);

/// n-point mid-quantile discretization of the standard normal on
/// Euclidean(1): atoms at the quantiles of (i - 1/2)/n, each of weight 1/n.
/// The support is symmetric about 0 by construction. Requires n >= 2.
DiscreteMeasure quantize_normal(std::size_t n);

}  // namespace wcone
