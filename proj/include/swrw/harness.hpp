#pragma once

#include "swrw/pipeline.hpp"
#include "swrw/scenarios.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swrw {

enum class Method { uis, wis, rw, mhrw, wrw, swrw };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);

/// A sampler plus its tuning parameter: the tiny-category weight for wis and
/// wrw, gamma for swrw, unused otherwise.
struct MethodSpec {
    Method method = Method::rw;
    double param = 1.0;
    SwrwConfig swrw;
};

/// One (scenario, method, param, n) cell of a replication run. The target is
/// the size of the tiny category relative to all relevant nodes.
struct CurvePoint {
    std::string scenario;
    std::string method;
    double param = 1.0;
    std::size_t n = 0;
    double cost = 0.0; ///< mean visits paid per run (pilot included)
    std::size_t reps = 0;
    double nrmse = 0.0;
    double stderr_nrmse = 0.0;
    double p_visited = 0.0;
    std::size_t stuck = 0; ///< runs that got stuck or whose pilot saw no relevant node
    bool low_confidence = false;
};

struct GainRow {
    std::string scenario;
    std::string method;
    double param = 1.0;
    std::string baseline;
    std::size_t n_opt = 0;
    double cost_opt = 0.0;
    double nrmse = 0.0;
    std::optional<double> cost_base;
    std::optional<double> alpha;
    /// ok | not_reached | below_grid | no_estimate
    std::string status;
};

struct ExperimentReport {
    std::vector<CurvePoint> curves;
    std::vector<GainRow> gains;
    std::vector<std::pair<std::string, std::string>> manifest;
};

/// Relevant-population size fraction of `target` estimated from a sample by
/// re-weighting with the recorded weights. 0 when no relevant node was visited.
double relevant_fraction(const WalkSample& s, CategoryId target);

/// Exact value of relevant_fraction for the scenario.
double tiny_truth(const Scenario& s);

/// R replications per grid point. Replication r at length n uses the seed
/// derive_seed(derive_seed(master, n), r) for every method, so methods share
/// random numbers. Stuck runs are counted; unless excluded they make the
/// NRMSE of their cell undefined (NaN).
std::vector<CurvePoint> run_replications(const Scenario& scenario, const MethodSpec& method,
                                         std::span<const std::size_t> n_grid, std::size_t reps,
                                         std::uint64_t master_seed, bool exclude_stuck = false);

struct WeightSweep {
    std::vector<CurvePoint> points;
    std::optional<double> argmin;
};

/// NRMSE of the tiny-size estimate at fixed n over a grid of weights.
WeightSweep error_vs_weight_sweep(const Scenario& scenario, MethodSpec method, std::span<const double> w_grid,
                                  std::size_t n, std::size_t reps, std::uint64_t master_seed);

/// For each point of `opt`, the baseline cost reaching the same NRMSE by
/// interpolation of log cost against log NRMSE; alpha = cost_base / cost_opt.
/// A baseline point with exactly the target NRMSE is used as is.
std::vector<GainRow> measure_gain(std::span<const CurvePoint> opt, std::span<const CurvePoint> baseline);

/// Geometric mean of the defined gains.
std::optional<double> mean_gain(std::span<const GainRow> rows);

/// NRMSE of the naive (vol_node) and star (vol_star) RW volume estimators of
/// the tiny category at several walk lengths.
std::vector<CurvePoint> volume_estimator_curves(const Scenario& scenario, std::span<const std::size_t> lengths,
                                                std::size_t reps, std::uint64_t master_seed);

struct ToyAMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Dwell-model mean and variance of the red size estimate after n_wh hub visits.
ToyAMoments toy_a_analytic(double p, double n_wh);

/// Monte Carlo of the same estimator by walking gen_toy_a with w1 = 1 - p, w2 = p.
ToyAMoments toy_a_monte_carlo(double p, std::size_t n_wh, std::size_t reps, std::uint64_t seed,
                              std::size_t category_size = 4);

/// Lengths of consecutive relevant-category runs between hub visits.
std::vector<std::size_t> toy_a_dwell_times(double p, std::size_t count, std::uint64_t seed,
                                           std::size_t category_size = 4);

/// Batch configuration of a preset experiment.
struct ExperimentConfig {
    std::string preset = "figure5";
    ScenarioSpec scenario;
    std::uint64_t seed = 0;
    std::size_t reps = 25;
    std::vector<std::size_t> n_grid{500, 1000, 2000, 4000};
    std::vector<double> w_grid{1, 5, 20, 100};
    SwrwConfig swrw;
    bool exclude_stuck = false;
};

/// Presets: figure5 (rw, wrw(w), swrw over n), gain (wis vs uis, wrw vs rw,
/// swrw vs rw), sweep (wis and wrw over w at the first n), volumes.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// key=value pairs describing the config, keyed like the command-line flags.
std::vector<std::pair<std::string, std::string>> manifest_entries(const ExperimentConfig& config);

/// curves.csv, visits.csv, gains.csv and manifest.txt under dir.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

} // namespace swrw
