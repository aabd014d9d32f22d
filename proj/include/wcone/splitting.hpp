#pragma once

#include <span>
#include <vector>

#include "wcone/measure.hpp"
#include "wcone/transport.hpp"

namespace wcone {

/// Pushforward of a measure under translation of its Euclidean factor by
/// `shift`. Works on Euclidean(k) and Product(Y, Euclidean(k)); the shift
/// length must match the factor dimension.
DiscreteMeasure translate(const DiscreteMeasure& mu,
                          std::span<const double> shift);

struct MeanDecomposition {
  /// The input re-centered so its Euclidean mean is the zero vector.
  DiscreteMeasure zero_mean;
  /// The removed mean, so translate(zero_mean, mean) reproduces the input.
  std::vector<double> mean;
};

/// Splits a measure into its zero-mean part and its Euclidean mean.
MeanDecomposition decompose(const DiscreteMeasure& mu);

/// Residual of the translation isometry
///   W2(translate(mu, h), translate(nu, hhat))^2
///     - (W2(mu, nu)^2 + |h - hhat|^2)
/// for zero-mean mu, nu (checked within mean_tol). Vanishes because optimal
/// plans are preserved by translation and the cross terms cancel against the
/// means.
double splitting_residual(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          std::span<const double> h,
                          std::span<const double> hhat,
                          double mean_tol = 1e-9);

struct DiameterCheck {
  double w2sq = 0.0;
  /// True iff w2sq <= 2 + tol.
  bool bound_ok = false;
};

/// For zero-mean measures on Euclidean(k) with unit second moment about the
/// origin, W2^2 is at most 2 (the cost of the product coupling, since the
/// cross term is the product of the means). Preconditions are enforced
/// within `tol`.
DiameterCheck diameter_bound_check(const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu,
                                   double tol = 1e-9);

}  // namespace wcone
