#include "wcone/measure.hpp"

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
}

TEST_CASE("measure construction validates weights and merges duplicates") {
  const Space e1 = Space::euclidean(1);

  const DiscreteMeasure merged(
      e1, {Point::euclidean({1.0}), Point::euclidean({1.0})}, {0.3, 0.7});
  CHECK(merged.size() == 1);
  CHECK(merged.weight(0) == 1.0);

  // Points within the merge tolerance also collapse.
  const DiscreteMeasure close(
      e1, {Point::euclidean({1.0}), Point::euclidean({1.0 + 1e-13})},
      {0.5, 0.5});
  CHECK(close.size() == 1);

  CHECK_THROWS_AS(DiscreteMeasure(e1, {Point::euclidean({0.0})}, {0.9}),
                  InvalidInput);  // mass != 1
  CHECK_THROWS_AS(DiscreteMeasure(
                      e1, {Point::euclidean({0.0}), Point::euclidean({1.0})},
                      {1.2, -0.2}),
                  InvalidInput);  // nonpositive weight
  CHECK_THROWS_AS(DiscreteMeasure(
                      e1, {Point::euclidean({0.0}), Point::euclidean({1.0})},
                      {1.0, 0.0}),
                  InvalidInput);  // zero weight
  CHECK_THROWS_AS(DiscreteMeasure(e1, {}, {}), InvalidInput);
  CHECK_THROWS_AS(
      DiscreteMeasure(e1, {Point::euclidean({0.0})}, {0.5, 0.5}),
      InvalidInput);  // size mismatch
  CHECK_THROWS_AS(DiscreteMeasure(e1, {Point::circle(0.0)}, {1.0}),
                  InvalidInput);  // wrong space
}

TEST_CASE("dirac") {
  const Space circle = Space::circle();
  const DiscreteMeasure d = DiscreteMeasure::dirac(circle, Point::circle(1.0));
  CHECK(d.size() == 1);
  CHECK(d.weight(0) == 1.0);
  CHECK(d.point(0).angle() == 1.0);
}

TEST_CASE("pushforward carries weights and merges collisions") {
  const Space e1 = Space::euclidean(1);
  const DiscreteMeasure mu(
      e1,
      {Point::euclidean({-2.0}), Point::euclidean({1.0}),
       Point::euclidean({2.0})},
      {0.25, 0.25, 0.5});

  // |x| folds -2 and 2 together; their weights add exactly.
  const DiscreteMeasure folded = mu.pushforward(
      [](const Point& p) {
        return Point::euclidean({std::abs(p.coords()[0])});
      },
      e1);
  REQUIRE(folded.size() == 2);
  double mass_at_2 = 0.0;
  for (std::size_t i = 0; i < folded.size(); ++i) {
    if (folded.point(i).coords()[0] == 2.0) mass_at_2 = folded.weight(i);
  }
  CHECK(mass_at_2 == 0.75);

  // Identity preserves everything.
  const DiscreteMeasure same =
      mu.pushforward([](const Point& p) { return p; }, e1);
  CHECK(same.size() == mu.size());
  CHECK(same.weights() == mu.weights());

  // Collapsing to a single point keeps total mass 1.
  const DiscreteMeasure collapsed = mu.pushforward(
      [](const Point&) { return Point::euclidean({0.0}); }, e1);
  CHECK(collapsed.size() == 1);
  CHECK(collapsed.weight(0) == 1.0);

  // Images must live in the target space.
  CHECK_THROWS_AS(
      mu.pushforward([](const Point&) { return Point::circle(0.0); }, e1),
      InvalidInput);
}

TEST_CASE("second moment about a base point") {
  const Space cone = Space::cone(Space::circle());
  const Point vertex = cone.origin();
  const DiscreteMeasure mu(cone,
                           {Point::cone(Point::circle(0.0), 1.0),
                            Point::cone(Point::circle(2.0), 2.0)},
                           {0.5, 0.5});
  CHECK(mu.second_moment(vertex) == 2.5);

  const DiscreteMeasure d = DiscreteMeasure::dirac(cone, vertex);
  CHECK(d.second_moment(vertex) == 0.0);

  CHECK_THROWS_AS(mu.second_moment(Point::circle(0.0)), InvalidInput);
}

TEST_CASE("second moment equals the transport cost from a dirac") {
  const Space e2 = Space::euclidean(2);
  Rng rng(99);
  for (int i = 0; i < 10; ++i) {
    const DiscreteMeasure mu = sample_measure(e2, 8, rng);
    const Point base = sample_point(e2, rng);
    const DiscreteMeasure d = DiscreteMeasure::dirac(e2, base);
    CHECK(optimal_plan(d, mu).cost == mu.second_moment(base));
  }
}

TEST_CASE("mean of the euclidean factor") {
  const Space e2 = Space::euclidean(2);
  const DiscreteMeasure d = DiscreteMeasure::dirac(e2, Point::euclidean({1.0, 2.0}));
  CHECK(d.mean() == std::vector<double>{1.0, 2.0});

  const Space e1 = Space::euclidean(1);
  const DiscreteMeasure two(
      e1, {Point::euclidean({0.0}), Point::euclidean({2.0})}, {0.5, 0.5});
  CHECK(two.mean() == std::vector<double>{1.0});

  // Product spaces: the mean sees only the right factor.
  const Space prod = Space::product(Space::circle(), Space::euclidean(1));
  const DiscreteMeasure pm(
      prod,
      {Point::product(Point::circle(0.0), Point::euclidean({3.0})),
       Point::product(Point::circle(2.0), Point::euclidean({5.0}))},
      {0.5, 0.5});
  CHECK(pm.mean() == std::vector<double>{4.0});

  CHECK_THROWS_AS(
      DiscreteMeasure::dirac(Space::circle(), Point::circle(0.0)).mean(),
      InvalidInput);
}

TEST_CASE("euclidean factor detection") {
  CHECK(euclidean_factor_dim(Space::euclidean(3)) == 3);
  CHECK(euclidean_factor_dim(Space::product(Space::circle(), Space::euclidean(2))) ==
        2);
  CHECK_FALSE(euclidean_factor_dim(Space::circle()).has_value());
  CHECK_FALSE(euclidean_factor_dim(Space::cone(Space::euclidean(2))).has_value());
  // Only the right factor counts as the linear part.
  CHECK_FALSE(euclidean_factor_dim(Space::product(Space::euclidean(2), Space::circle()))
                  .has_value());
}

TEST_CASE("normal quantile function") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(std::abs(normal_quantile(0.75) - 0.6744897501960817) <= 1e-12);
  // Odd symmetry is exact by construction.
  CHECK(normal_quantile(0.25) == -normal_quantile(0.75));
  CHECK(normal_quantile(0.1) == -normal_quantile(0.9));
  // Phi(1) back through the quantile.
  CHECK(std::abs(normal_quantile(0.8413447460685429) - 1.0) <= 1e-12);
  // Tail region (beyond the rational-core split at 0.97575).
  CHECK(std::abs(normal_quantile(0.99) - 2.3263478740408408) <= 1e-12);

  CHECK_THROWS_AS(normal_quantile(0.0), InvalidInput);
  CHECK_THROWS_AS(normal_quantile(1.0), InvalidInput);
  CHECK_THROWS_AS(normal_quantile(-0.5), InvalidInput);
}

TEST_CASE("quantized normal: symmetry, mean, and moments") {
  const DiscreteMeasure q2 = quantize_normal(2);
  REQUIRE(q2.size() == 2);
  CHECK(std::abs(std::abs(q2.point(0).coords()[0]) - 0.6744897501960817) <=
        1e-12);
  CHECK(q2.weight(0) == 0.5);

  // Odd n keeps an atom exactly at 0.
  const DiscreteMeasure q5 = quantize_normal(5);
  bool has_zero = false;
  for (std::size_t i = 0; i < q5.size(); ++i) {
    if (q5.point(i).coords()[0] == 0.0) has_zero = true;
  }
  CHECK(has_zero);

  for (std::size_t n : {10, 101, 1000}) {
    const DiscreteMeasure q = quantize_normal(n);
    CHECK(std::abs(q.mean()[0]) <= 1e-12);
  }

  // Mid-quantile discretization underestimates the second moment slightly;
  // these root-second-moment values are pinned from an independent
  // evaluation of the same quadrature.
  const Point origin = Space::euclidean(1).origin();
  CHECK(std::abs(std::sqrt(quantize_normal(10).second_moment(origin)) -
                 0.937969795249138) <= 1e-9);
  CHECK(std::abs(std::sqrt(quantize_normal(100).second_moment(origin)) -
                 0.9936345568786624) <= 1e-9);
  CHECK(std::abs(std::sqrt(quantize_normal(1000).second_moment(origin)) -
                 0.9993494179950431) <= 1e-9);

  CHECK_THROWS_AS(quantize_normal(0), InvalidInput);
  CHECK_THROWS_AS(quantize_normal(1), InvalidInput);
}

TEST_CASE("random measures are valid probability measures") {
  Rng rng(31);
  const Space spaces[] = {Space::euclidean(2), Space::circle(),
                          Space::cone(Space::circle()),
                          Space::product(Space::circle(), Space::euclidean(1))};
  for (const Space& space : spaces) {
    for (int i = 0; i < 5; ++i) {
      const DiscreteMeasure mu = sample_measure(space, 8, rng);
      double total = 0.0;
      for (double w : mu.weights()) {
        CHECK(w > 0.0);
        total += w;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
      for (const Point& p : mu.support()) CHECK(space.contains(p));
    }
  }
}
