#pragma once

#include "swrw/stratification.hpp"
#include "swrw/walk.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swrw {

/// How an inter-category edge combines the target weights of its endpoints.
/// `hybrid` takes the geometric mean when either endpoint is irrelevant and
/// the maximum otherwise.
enum class ConflictRule { arithmetic, geometric, max, hybrid };

std::string_view to_string(ConflictRule r) noexcept;
ConflictRule parse_conflict_rule(std::string_view name);

struct SwrwConfig {
    /// Desired mass on the irrelevant category, relative to the relevant mass.
    double f_irrelevant = 0.01;
    /// Maximal resolution: categories with estimated volume below 1/gamma of
    /// the largest relevant one are clamped up.
    double gamma = 100.0;
    ConflictRule conflict = ConflictRule::hybrid;
    Objective objective = Objective::sizes;
    /// Explicit pilot length; otherwise pilot_fraction of the main length.
    std::optional<std::size_t> pilot_length;
    double pilot_fraction = 0.065;
    /// Per-category standard deviations (empty means all equal).
    std::vector<double> sigmas;
    /// Per-category sizes for the size-dependent objectives. When empty the
    /// clamped volume estimates stand in for sizes.
    std::vector<double> category_sizes;

    void validate() const;
    std::size_t pilot_for(std::size_t main_length) const;
};

/// Per-category quantities of the edge-weight heuristic.
struct EdgeWeightPlan {
    std::vector<std::string> labels;
    std::optional<CategoryId> irrelevant;
    std::vector<double> vol_hat;   ///< pilot volume-fraction estimates
    std::vector<double> vol_tilde; ///< clamped volumes
    std::vector<double> w_wis;     ///< WIS-optimal category weights
    std::vector<double> w_tilde;   ///< after irrelevant-mass injection
    std::vector<double> w_edge;    ///< target edge weight per category
    ConflictRule conflict = ConflictRule::hybrid;
    double vol_min = 0.0;
    std::vector<std::string> warnings;
};

/// Pilot RW of the given length followed by the star volume estimator.
/// Categories never seen among visits or their neighbors get 0.
std::vector<double> pilot_volumes(const CrawlContext& ctx, std::size_t pilot_length, std::uint64_t seed,
                                  WalkSample* pilot_out = nullptr);

/// Category weights equal to the planned sample counts; the irrelevant category gets 0.
std::vector<double> category_wis_weights(const AllocationPlan& plan, std::optional<CategoryId> irrelevant);

/// Relevant weights unchanged; the irrelevant category receives
/// f_irrelevant times the total relevant weight. Without an irrelevant
/// category this is a no-op and `warned` is set when f_irrelevant > 0.
std::vector<double> inject_irrelevant_mass(std::span<const double> weights, std::optional<CategoryId> irrelevant,
                                           double f_irrelevant, bool* warned = nullptr);

struct ClampedVolumes {
    std::vector<double> volumes;
    double vol_min = 0.0;
};

/// vol_min = max over relevant categories / gamma; every volume is raised to at least vol_min.
ClampedVolumes clamp_volumes(std::span<const double> estimates, double gamma, std::optional<CategoryId> irrelevant);

std::vector<double> target_edge_weights(std::span<const double> w_tilde, std::span<const double> vol_tilde);

/// Weight of an inter-category edge whose endpoints want a and b.
double resolve_edge(double a, double b, bool touches_irrelevant, ConflictRule rule);

/// Copy of g with every edge re-weighted from the per-category targets.
WeightedGraph resolve_conflicts(const WeightedGraph& g, const CategoryPartition& p,
                                std::span<const double> targets, ConflictRule rule);

/// Steps 2-4 of the heuristic for given pilot volume estimates.
EdgeWeightPlan plan_edge_weights(const CategoryPartition& p, const SwrwConfig& config, std::vector<double> vol_hat);

struct SwrwResult {
    WalkSample sample;
    WalkSample pilot;
    EdgeWeightPlan plan;
    /// Fraction of relevant categories visited by the main walk.
    double category_coverage = 0.0;
    bool confined = false;

    /// Total number of visits paid for, pilot included.
    std::size_t cost() const noexcept { return sample.size() + pilot.size(); }
};

/// Pilot RW, category weights, irrelevant mass, clamping, conflict
/// resolution, then a WRW of length n on the re-weighted graph starting where
/// the pilot ended. Visits record the achieved node weights.
SwrwResult run_swrw(const CrawlContext& ctx, const SwrwConfig& config, std::size_t n, std::uint64_t seed);

/// Edge weights giving every node exactly its target weight on a graph with a
/// self-loop at every node: non-loop edges get w_min/N, each loop takes the rest.
WeightedGraph arbitrary_node_weights(const WeightedGraph& g, std::span<const double> targets);

} // namespace swrw
