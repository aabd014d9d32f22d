#pragma once

#include <cstddef>
#include <vector>

#include "wcone/measure.hpp"

namespace wcone {

/// Coupling of two measures on a common space, together with its transport
/// cost sum pi_ij * d(x_i, y_j)^p.
struct TransportPlan {
  DiscreteMeasure source;
  DiscreteMeasure target;
  /// Row-major source.size() x target.size() matrix of transported mass.
  std::vector<double> coupling;
  double exponent = 2.0;
  double cost = 0.0;

  double mass(std::size_t i, std::size_t j) const {
    return coupling[i * target.size() + j];
  }

  /// Largest deviation of a row/column sum from the corresponding weight.
  double max_marginal_residual() const;
};

/// Exact optimal transport plan between two measures on the same space
/// (transportation simplex on the bipartite support graph; Bland's rule, so
/// it terminates on degenerate instances). Requires p >= 1.
TransportPlan optimal_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           double p = 2.0);

/// p-Wasserstein distance: optimal cost to the power 1/p.
double wasserstein_distance(const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, double p = 2.0);

/// Independent slow oracle for cross-checking optimal_plan.
///
/// Three regimes: single-atom instances use the product coupling; uniform
/// instances with equal support sizes <= 6 enumerate all permutation
/// couplings; everything else enumerates every basic feasible solution
/// (spanning trees of the complete bipartite support graph). Throws TooLarge
/// when the tree count exceeds the enumeration budget (~1e6).
TransportPlan brute_force_plan(const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, double p = 2.0);

}  // namespace wcone
