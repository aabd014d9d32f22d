#include "wcone/splitting.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wcone/error.hpp"
#include "wcone/random.hpp"
#include "wcone/transport.hpp"

using namespace wcone;

namespace {
constexpr double kPi = std::numbers::pi;

DiscreteMeasure line_measure(std::vector<double> xs, std::vector<double> ws) {
  const Space e1 = Space::euclidean(1);
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (double x : xs) pts.push_back(Point::euclidean({x}));
  return DiscreteMeasure(e1, pts, ws);
}
}  // namespace

TEST_CASE("translate shifts every atom by the same vector") {
  const DiscreteMeasure mu = line_measure({-1.0, 1.0}, {0.5, 0.5});
  const std::vector<double> three = {3.0};
  const DiscreteMeasure shifted = translate(mu, three);
  REQUIRE(shifted.size() == 2);
  CHECK(shifted.point(0).coords()[0] == 2.0);
  CHECK(shifted.point(1).coords()[0] == 4.0);
  CHECK(shifted.weight(0) == 0.5);

  const std::vector<double> wrong_dim = {1.0, 2.0};
  CHECK_THROWS_AS(translate(mu, wrong_dim), InvalidInput);
  CHECK_THROWS_AS(
      translate(DiscreteMeasure::dirac(Space::circle(), Point::circle(0.0)),
                three),
      InvalidInput);
}

TEST_CASE("translate acts on the euclidean factor of a product") {
  const Space prod = Space::product(Space::circle(), Space::euclidean(2));
  const DiscreteMeasure mu(
      prod,
      {Point::product(Point::circle(0.5), Point::euclidean({1.0, -1.0})),
       Point::product(Point::circle(-2.0), Point::euclidean({0.0, 2.0}))},
      {0.25, 0.75});
  const std::vector<double> shift = {10.0, 20.0};
  const DiscreteMeasure shifted = translate(mu, shift);
  CHECK(shifted.point(0).left().angle() == 0.5);
  CHECK(shifted.point(0).right().coords()[0] == 11.0);
  CHECK(shifted.point(0).right().coords()[1] == 19.0);
  CHECK(shifted.point(1).right().coords()[1] == 22.0);
}

TEST_CASE("translation is a transport isometry") {
  Rng rng(211);
  const Space e2 = Space::euclidean(2);
  for (int i = 0; i < 10; ++i) {
    const DiscreteMeasure mu = sample_measure(e2, 5, rng);
    const DiscreteMeasure nu = sample_measure(e2, 5, rng);
    const std::vector<double> h = {rng.uniform(-5.0, 5.0),
                                   rng.uniform(-5.0, 5.0)};
    const double before = optimal_plan(mu, nu).cost;
    const double after = optimal_plan(translate(mu, h), translate(nu, h)).cost;
    CHECK(std::abs(after - before) <= 1e-9 * std::max({1.0, before, after}));
  }
}

TEST_CASE("decompose splits a measure into mean and centered part") {
  const DiscreteMeasure mu = line_measure({1.0, 3.0}, {0.5, 0.5});
  const MeanDecomposition dec = decompose(mu);
  REQUIRE(dec.mean.size() == 1);
  CHECK(dec.mean[0] == 2.0);
  CHECK(dec.zero_mean.point(0).coords()[0] == -1.0);
  CHECK(dec.zero_mean.point(1).coords()[0] == 1.0);

  // Reassembling recovers the original support exactly.
  const DiscreteMeasure back = translate(dec.zero_mean, dec.mean);
  CHECK(back.point(0).coords()[0] == 1.0);
  CHECK(back.point(1).coords()[0] == 3.0);

  const std::vector<double> m = dec.zero_mean.mean();
  CHECK(m[0] == 0.0);
}

TEST_CASE("splitting residual: integer worked example is exact") {
  // mu = (delta_{-1} + delta_{1})/2, nu = delta_0, shifts h = 3, hhat = 0.
  // Then W2(mu + 3, nu)^2 = (1/2)(4 + 16) = 10 and
  // W2(mu, nu)^2 + |h - hhat|^2 = 1 + 9 = 10, both exactly representable.
  const DiscreteMeasure mu = line_measure({-1.0, 1.0}, {0.5, 0.5});
  const DiscreteMeasure nu = line_measure({0.0}, {1.0});
  const std::vector<double> h = {3.0};
  const std::vector<double> hhat = {0.0};
  CHECK(optimal_plan(translate(mu, h), translate(nu, hhat)).cost == 10.0);
  CHECK(optimal_plan(mu, nu).cost == 1.0);
  CHECK(splitting_residual(mu, nu, h, hhat) == 0.0);
}

TEST_CASE("splitting residual requires centered inputs") {
  const DiscreteMeasure off_center = line_measure({1.0, 3.0}, {0.5, 0.5});
  const DiscreteMeasure ok = line_measure({-1.0, 1.0}, {0.5, 0.5});
  const std::vector<double> zero = {0.0};
  const std::vector<double> too_long = {0.0, 1.0};
  CHECK_THROWS_AS(splitting_residual(off_center, ok, zero, zero),
                  InvalidInput);
  CHECK_THROWS_AS(splitting_residual(ok, off_center, zero, zero),
                  InvalidInput);
  CHECK_THROWS_AS(splitting_residual(ok, ok, too_long, zero), InvalidInput);
}

TEST_CASE("splitting residual vanishes on random euclidean pairs") {
  Rng rng(223);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    const Space space = Space::euclidean(k);
    const DiscreteMeasure mu =
        decompose(sample_measure(space, 6, rng)).zero_mean;
    const DiscreteMeasure nu =
        decompose(sample_measure(space, 6, rng)).zero_mean;
    std::vector<double> h(k), hhat(k);
    for (std::size_t d = 0; d < k; ++d) {
      h[d] = rng.uniform(-5.0, 5.0);
      hhat[d] = rng.uniform(-5.0, 5.0);
    }
    CHECK(std::abs(splitting_residual(mu, nu, h, hhat)) <= 1e-8);
  }
}

TEST_CASE("splitting residual vanishes on product spaces") {
  Rng rng(227);
  const Space prod = Space::product(Space::circle(), Space::euclidean(2));
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteMeasure mu =
        decompose(sample_measure(prod, 5, rng)).zero_mean;
    const DiscreteMeasure nu =
        decompose(sample_measure(prod, 5, rng)).zero_mean;
    const std::vector<double> h = {rng.uniform(-3.0, 3.0),
                                   rng.uniform(-3.0, 3.0)};
    const std::vector<double> hhat = {rng.uniform(-3.0, 3.0),
                                      rng.uniform(-3.0, 3.0)};
    CHECK(std::abs(splitting_residual(mu, nu, h, hhat)) <= 1e-8);
  }
}

TEST_CASE("diameter bound: opposite axes on the plane reach exactly 2") {
  // mu on the x-axis, nu on the y-axis, both centered with unit second
  // moment. Every pairing costs 2, so W2^2 = 2: the bound is tight.
  const Space e2 = Space::euclidean(2);
  const DiscreteMeasure mu(
      e2, {Point::euclidean({1.0, 0.0}), Point::euclidean({-1.0, 0.0})},
      {0.5, 0.5});
  const DiscreteMeasure nu(
      e2, {Point::euclidean({0.0, 1.0}), Point::euclidean({0.0, -1.0})},
      {0.5, 0.5});
  const DiameterCheck check = diameter_bound_check(mu, nu);
  CHECK(check.w2sq == 2.0);
  CHECK(check.bound_ok);
}

TEST_CASE("diameter bound rejects unnormalized inputs") {
  const DiscreteMeasure skew = line_measure({0.0, 2.0}, {0.5, 0.5});
  const DiscreteMeasure unit = line_measure({-1.0, 1.0}, {0.5, 0.5});
  CHECK_THROWS_AS(diameter_bound_check(skew, unit), InvalidInput);
  CHECK_THROWS_AS(diameter_bound_check(unit, skew), InvalidInput);

  const Space circle = Space::circle();
  const DiscreteMeasure angular(circle,
                                {Point::circle(0.0), Point::circle(kPi)},
                                {0.5, 0.5});
  CHECK_THROWS_AS(diameter_bound_check(angular, angular), InvalidInput);
}

TEST_CASE("diameter bound holds on random normalized pairs") {
  Rng rng(229);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 4);
    const DiscreteMeasure mu = sample_normalized_measure(k, 6, rng);
    const DiscreteMeasure nu = sample_normalized_measure(k, 6, rng);
    const DiameterCheck check = diameter_bound_check(mu, nu);
    CHECK(check.w2sq <= 2.0 + 1e-9);
    CHECK(check.bound_ok);
  }
}
