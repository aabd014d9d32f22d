#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wcone {

/// One finished experiment: a rectangular numeric table plus a JSON summary.
/// `pass` reflects the experiment's own acceptance threshold (recorded in
/// the summary), except where an experiment is deliberately report-only.
struct ExperimentResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json summary;
  bool pass = false;
};

struct ExperimentOptions {
  /// Number of random trials; defaults depend on the experiment.
  std::optional<std::size_t> trials;
  std::uint64_t seed = 7;
  /// Grid resolution of the embedding-gap sweep: thetas k*pi/(3*(grid+1)).
  std::size_t theta_grid = 19;
  /// Discretization size of the quantized-normal check.
  std::size_t normal_points = 1000;
};

/// Dilation distance identity on random cone measures (circle and random
/// finite bases), residuals normalized by max(1, |lhs|, |rhs|).
ExperimentResult run_cone_identity_experiment(std::size_t trials,
                                              std::uint64_t seed);

/// Closed-form sweep of the circle embedding gap; checks the solver against
/// W2^2 = 5/2 theta^2 and cos(angle) = (cos theta + cos 2theta)/2, and
/// reports the signed difference W2 - angle without asserting its sign.
ExperimentResult run_counterexample_experiment(std::size_t grid_points);

/// Radial rays are geodesics (W2(Psi_s mu, Psi_t mu) = |s-t| W2(delta, mu))
/// and the law-of-cosines cone over unit directions matches the solver.
ExperimentResult run_geodesic_experiment(std::size_t trials,
                                         std::uint64_t seed);

/// Translation isometry residual on random zero-mean pairs over Euclidean(k)
/// and Product(circle, Euclidean(k)), k in 1..4, shifts up to norm 10.
ExperimentResult run_splitting_experiment(std::size_t trials,
                                          std::uint64_t seed);

/// W2^2 <= 2 for random zero-mean unit-second-moment pairs on Euclidean(k).
ExperimentResult run_diameter_experiment(std::size_t trials,
                                         std::uint64_t seed);

/// The three-ray branching example: exact distances and the antipodal
/// witness pair.
ExperimentResult run_branching_experiment();

/// Quantized standard normal pushed onto a cone ray: W2 from the vertex
/// approaches 1 as the discretization refines.
ExperimentResult run_normal_experiment(std::size_t n);

/// Dispatch by CLI name: kyori, counterexample, geodesic, splitting,
/// diameter, branching, normal. Unknown names raise InvalidInput.
ExperimentResult run_experiment(const std::string& name,
                                const ExperimentOptions& options);

/// All experiment names accepted by run_experiment, in display order.
const std::vector<std::string>& experiment_names();

/// Doubles rendered with 17 significant digits (round-trip safe).
std::string format_double(double v);

void write_csv(const ExperimentResult& result, std::ostream& out);
void write_csv_file(const ExperimentResult& result,
                    const std::filesystem::path& path);
void write_summary_file(const ExperimentResult& result,
                        const std::filesystem::path& path);

}  // namespace wcone
