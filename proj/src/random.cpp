#include "wcone/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "wcone/cone.hpp"
#include "wcone/error.hpp"

namespace wcone {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(seed + trial * 0x9E3779B97F4A7C15ull));
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // in (0, 1], keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  spare_normal_ = radius * std::sin(angle);
  have_spare_normal_ = true;
  return radius * std::cos(angle);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw InvalidInput("Rng::index requires n >= 1");
  const std::uint64_t span = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() / span * span;
  while (true) {
    const std::uint64_t x = next();
    if (x < limit) return static_cast<std::size_t>(x % span);
  }
}

Point sample_point(const Space& space, Rng& rng) {
  switch (space.kind()) {
    case Space::Kind::finite:
      return Point::finite(rng.index(space.finite_size()));
    case Space::Kind::circle:
      return Point::circle(rng.uniform(-kPi, kPi));
    case Space::Kind::euclidean: {
      std::vector<double> coords(space.euclidean_dim());
      for (double& c : coords) c = rng.normal();
      return Point::euclidean(std::move(coords));
    }
    case Space::Kind::cone:
      return Point::cone(sample_point(space.base(), rng), rng.uniform(0.0, 2.0));
    case Space::Kind::product:
      return Point::product(sample_point(space.left(), rng),
                            sample_point(space.right(), rng));
  }
  throw Error("unreachable space kind");
}

DiscreteMeasure sample_measure(const Space& space, std::size_t max_support,
                               Rng& rng, bool uniform_weights) {
  if (max_support == 0) {
    throw InvalidInput("sample_measure requires max_support >= 1");
  }
  const std::size_t k = 1 + rng.index(max_support);
  std::vector<Point> support;
  support.reserve(k);
  for (std::size_t i = 0; i < k; ++i) support.push_back(sample_point(space, rng));

  std::vector<double> weights(k);
  if (uniform_weights) {
    for (double& w : weights) w = 1.0 / static_cast<double>(k);
  } else {
    double total = 0.0;
    for (double& w : weights) {
      w = 0.1 + rng.uniform();  // bounded away from zero
      total += w;
    }
    for (double& w : weights) w /= total;
  }
  return DiscreteMeasure(space, std::move(support), std::move(weights));
}

Space sample_finite_space(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidInput("sample_finite_space requires n >= 1");
  std::vector<std::pair<double, double>> pts(n);
  for (auto& [x, y] : pts) {
    x = rng.uniform(0.0, 4.0);
    y = rng.uniform(0.0, 4.0);
  }
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = pts[i].first - pts[j].first;
      const double dy = pts[i].second - pts[j].second;
      matrix[i][j] = std::sqrt(dx * dx + dy * dy);
    }
  }
  return Space::finite(matrix);
}

DiscreteMeasure sample_normalized_measure(std::size_t dim,
                                          std::size_t max_support, Rng& rng) {
  if (max_support < 2) {
    throw InvalidInput("sample_normalized_measure requires max_support >= 2");
  }
  while (true) {
    const std::size_t k = 2 + rng.index(max_support - 1);
    std::vector<std::vector<double>> coords(k, std::vector<double>(dim));
    std::vector<double> weights(k);
    double total = 0.0;
    for (double& w : weights) {
      w = 0.1 + rng.uniform();
      total += w;
    }
    for (double& w : weights) w /= total;
    for (auto& point : coords) {
      for (double& c : point) c = rng.normal();
    }

    std::vector<double> mean(dim, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t d = 0; d < dim; ++d) mean[d] += weights[i] * coords[i][d];
    }
    double moment = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double c = coords[i][d] - mean[d];
        coords[i][d] = c;
        moment += weights[i] * c * c;
      }
    }
    if (moment < 1e-9) continue;  // all atoms collapsed; resample

    const double scale = 1.0 / std::sqrt(moment);
    std::vector<Point> support;
    support.reserve(k);
    for (auto& point : coords) {
      for (double& c : point) c *= scale;
      support.push_back(Point::euclidean(point));
    }
    return DiscreteMeasure(Space::euclidean(dim), std::move(support),
                           std::move(weights));
  }
}

DiscreteMeasure sample_unit_direction(const Space& cone_space,
                                      std::size_t max_support, Rng& rng) {
  while (true) {
    const DiscreteMeasure raw = sample_measure(cone_space, max_support, rng);
    const double moment = raw.second_moment(cone_vertex(cone_space));
    if (moment < 1e-6) continue;  // nearly all mass at the vertex; resample
    return radial_geodesic(raw, 1.0 / std::sqrt(moment));
  }
}

}  // namespace wcone
