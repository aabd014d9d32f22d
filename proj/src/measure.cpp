#include "wcone/measure.hpp"

#include <cmath>
#include <utility>

#include "wcone/detail/compensated_sum.hpp"
#include "wcone/error.hpp"

namespace wcone {

using detail::CompensatedSum;

DiscreteMeasure::DiscreteMeasure(Space space, std::vector<Point> support,
                                 std::vector<double> weights)
    : space_(std::move(space)) {
  if (support.size() != weights.size()) {
    throw InvalidInput("measure needs one weight per support point");
  }
  if (support.empty()) {
    throw InvalidInput("measure needs a nonempty support");
  }
  for (const auto& p : support) space_.require(p);
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidInput("measure weights must be strictly positive");
    }
  }

  for (std::size_t i = 0; i < support.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < support_.size(); ++j) {
      if (space_.distance(support[i], support_[j]) <= kMergeTol) {
        weights_[j] += weights[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      support_.push_back(support[i]);
      weights_.push_back(weights[i]);
    }
  }

  CompensatedSum mass;
  for (double w : weights_) mass.add(w);
  if (std::abs(mass.value() - 1.0) > kMassTol) {
    throw InvalidInput("measure weights must sum to 1");
  }
}

DiscreteMeasure DiscreteMeasure::dirac(Space space, Point x) {
  return DiscreteMeasure(std::move(space), {std::move(x)}, {1.0});
}

DiscreteMeasure DiscreteMeasure::pushforward(
    const std::function<Point(const Point&)>& map, Space target) const {
  std::vector<Point> images;
  images.reserve(support_.size());
  for (const auto& p : support_) images.push_back(map(p));
  return DiscreteMeasure(std::move(target), std::move(images), weights_);
}

double DiscreteMeasure::second_moment(const Point& base) const {
  space_.require(base);
  CompensatedSum sum;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    sum.add(weights_[i] * space_.distance_squared(base, support_[i]));
  }
  return sum.value();
}

std::vector<double> DiscreteMeasure::mean() const {
  const auto dim = euclidean_factor_dim(space_);
  if (!dim) {
    throw InvalidInput("mean requires a space with a Euclidean factor, got " +
                       space_.describe());
  }
  std::vector<CompensatedSum> sums(*dim);
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const auto coords = euclidean_projection(space_, support_[i]);
    for (std::size_t k = 0; k < *dim; ++k) {
      sums[k].add(weights_[i] * coords[k]);
    }
  }
  std::vector<double> result(*dim);
  for (std::size_t k = 0; k < *dim; ++k) result[k] = sums[k].value();
  return result;
}

std::optional<std::size_t> euclidean_factor_dim(const Space& space) {
  if (space.kind() == Space::Kind::euclidean) {
    return space.euclidean_dim();
  }
  if (space.kind() == Space::Kind::product &&
      space.right().kind() == Space::Kind::euclidean) {
    return space.right().euclidean_dim();
  }
  return std::nullopt;
}

std::span<const double> euclidean_projection(const Space& space,
                                             const Point& p) {
  if (space.kind() == Space::Kind::euclidean) {
    return p.coords();
  }
  if (space.kind() == Space::Kind::product &&
      space.right().kind() == Space::Kind::euclidean) {
    return p.right().coords();
  }
  throw InvalidInput("space has no Euclidean factor: " + space.describe());
}

namespace {

// Rational approximation of the inverse standard-normal CDF on the upper half
// (Acklam's coefficients), refined below by Newton steps through erfc. The
// raw approximation is good to ~1e-9; two refinements bring it to full
// double precision.
double inverse_cdf_upper(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_high = 1.0 - 0.02425;

  double x;
  if (p <= p_high) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Newton refinement: solve Phi(x) = p with Phi(x) = erfc(-x/sqrt(2))/2.
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  constexpr double sqrt_2pi = 2.50662827463100050242;
  for (int iter = 0; iter < 2; ++iter) {
    const double err = 0.5 * std::erfc(-x * inv_sqrt2) - p;
    const double density = std::exp(-0.5 * x * x) / sqrt_2pi;
    if (density == 0.0) break;
    x -= err / density;
  }
  return x;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw InvalidInput("normal_quantile requires p in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  // Evaluate on the upper half only so that the function is exactly
  // odd-symmetric: q(1 - p) == -q(p) bit for bit.
  if (p > 0.5) return inverse_cdf_upper(p);
  return -inverse_cdf_upper(1.0 - p);
}

DiscreteMeasure quantize_normal(std::size_t n) {
  if (n < 2) {
    throw InvalidInput("quantize_normal requires n >= 2");
  }
  // Fill the lower half and mirror it so the support is symmetric about 0 by
  // construction (the weighted mean then cancels to ~1 ulp).
  std::vector<double> atoms(n, 0.0);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double q = normal_quantile(p);  // negative on this half
    atoms[i] = q;
    atoms[n - 1 - i] = -q;
  }
  std::vector<Point> support;
  support.reserve(n);
  for (double a : atoms) support.push_back(Point::euclidean({a}));
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  return DiscreteMeasure(Space::euclidean(1), std::move(support),
                         std::move(weights));
}

}  // namespace wcone
