#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "wcone/error.hpp"
#include "wcone/experiments.hpp"
#include "wcone/json_io.hpp"
#include "wcone/random.hpp"
#include "wcone/transport.hpp"

namespace {

namespace fs = std::filesystem;

// Exit codes: 0 = success / verification passed, 1 = verification failed,
// 2 = usage or input error.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int run_validate(const std::string& path, std::size_t samples,
                 std::uint64_t seed, double tol) {
  // Load without the constructor-level metric checks so that a broken matrix
  // is reported as a structured violation list instead of a parse error.
  const wcone::Space space = wcone::load_space(path, /*check_finite=*/false);
  std::vector<wcone::Point> sample;
  if (space.kind() != wcone::Space::Kind::finite) {
    if (samples == 0) {
      throw wcone::InvalidInput("--samples must be at least 1");
    }
    wcone::Rng rng(seed);
    sample.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      sample.push_back(wcone::sample_point(space, rng));
    }
  }
  const wcone::MetricReport report =
      wcone::validate_metric(space, sample, tol);
  std::cout << wcone::metric_report_to_json(report).dump(2) << "\n";
  return report.ok() ? kPass : kFail;
}

int run_dist(const std::string& path_a, const std::string& path_b, double p,
             bool show_plan) {
  const wcone::DiscreteMeasure mu = wcone::load_measure(path_a);
  const wcone::DiscreteMeasure nu = wcone::load_measure(path_b);
  const wcone::TransportPlan plan = wcone::optimal_plan(mu, nu, p);
  nlohmann::json out;
  if (show_plan) {
    out = wcone::plan_to_json(plan);
  } else {
    out = wcone::plan_to_json(plan);
    out.erase("coupling");
    out.erase("source");
    out.erase("target");
  }
  std::cout << out.dump(2) << "\n";
  return kPass;
}

int run_experiment_command(const std::string& name,
                           const wcone::ExperimentOptions& options,
                           const std::string& out_dir) {
  const wcone::ExperimentResult result = wcone::run_experiment(name, options);
  const fs::path dir(out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  wcone::write_csv_file(result, dir / (result.name + ".csv"));
  wcone::write_summary_file(result, dir / (result.name + "_summary.json"));
  std::cout << result.summary.dump(2) << "\n";
  return result.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact 2-Wasserstein distances on composable metric spaces "
      "(finite, circle, Euclidean, cone, product), with verification "
      "experiments for cone dilation, direction angles, translation "
      "splitting, and vertex branching."};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "Check the metric axioms of a space");
  std::string validate_path;
  std::size_t validate_samples = 50;
  std::uint64_t validate_seed = 12345;
  double validate_tol = 1e-12;
  validate_cmd->add_option("space", validate_path, "Space JSON file")
      ->required();
  validate_cmd->add_option("--samples", validate_samples,
                           "Sample size for non-finite spaces");
  validate_cmd->add_option("--seed", validate_seed, "Sampling seed");
  validate_cmd->add_option("--tol", validate_tol, "Violation tolerance");

  // dist
  auto* dist_cmd = app.add_subcommand(
      "dist", "Optimal transport distance between two measures");
  std::string dist_a;
  std::string dist_b;
  double dist_p = 2.0;
  bool dist_plan = false;
  dist_cmd->add_option("a", dist_a, "First measure JSON file")->required();
  dist_cmd->add_option("b", dist_b, "Second measure JSON file")->required();
  dist_cmd->add_option("--p", dist_p, "Transport exponent (>= 1)");
  dist_cmd->add_flag("--plan", dist_plan, "Include the optimal coupling");

  // experiment
  auto* exp_cmd = app.add_subcommand(
      "experiment", "Run a verification experiment and write CSV + summary");
  std::string exp_name;
  long long exp_trials = -1;
  std::uint64_t exp_seed = 7;
  std::size_t exp_theta_grid = 19;
  std::size_t exp_normal_points = 1000;
  std::string exp_out = ".";
  if (const char* env = std::getenv("WCONE_OUT_DIR")) exp_out = env;
  exp_cmd->add_option("name", exp_name,
                      "One of: kyori, counterexample, geodesic, splitting, "
                      "diameter, branching, normal")
      ->required();
  exp_cmd->add_option("--trials", exp_trials,
                      "Trial count (defaults depend on the experiment)");
  exp_cmd->add_option("--seed", exp_seed, "Base seed for the trial streams");
  exp_cmd->add_option("--theta-grid", exp_theta_grid,
                      "Grid resolution of the counterexample sweep");
  exp_cmd->add_option("--normal-points", exp_normal_points,
                      "Quantization size of the normal experiment");
  exp_cmd
      ->add_option("--out", exp_out,
                   "Output directory (default: $WCONE_OUT_DIR or .)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*validate_cmd) {
      return run_validate(validate_path, validate_samples, validate_seed,
                          validate_tol);
    }
    if (*dist_cmd) {
      return run_dist(dist_a, dist_b, dist_p, dist_plan);
    }
    wcone::ExperimentOptions options;
    if (exp_trials >= 0) {
      options.trials = static_cast<std::size_t>(exp_trials);
    }
    options.seed = exp_seed;
    options.theta_grid = exp_theta_grid;
    options.normal_points = exp_normal_points;
    return run_experiment_command(exp_name, options, exp_out);
  } catch (const wcone::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
