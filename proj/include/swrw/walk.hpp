#pragma once

#include "swrw/graph.hpp"
#include "swrw/partition.hpp"
#include "swrw/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swrw {

enum class Sampler { uis, wis, rw, mhrw, wrw, swrw };

std::string_view to_string(Sampler s) noexcept;
Sampler parse_sampler(std::string_view name);

/// One recorded visit.
///
/// `weight` is the sampling weight of the node, i.e. its stationary (or
/// independence) probability up to a constant: 1 for UIS and MHRW, z(v) for
/// WIS, deg(v) for RW and w(v) for WRW. Estimators divide by it.
struct Visit {
    NodeId node = 0;
    std::uint32_t degree = 0;
    CategoryId category = 0;
    double weight = 0.0;
    std::size_t neighbors_begin = 0;
    std::uint32_t neighbors_size = 0;
};

/// Ordered trace of visits together with the categories seen around each visit.
struct WalkSample {
    Sampler sampler = Sampler::rw;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;
    std::vector<std::string> category_labels;
    std::optional<CategoryId> irrelevant;
    std::vector<Visit> visits;
    std::vector<NeighborCategories::Entry> neighbor_entries;
    bool has_neighbor_counts = false;

    std::size_t size() const noexcept { return visits.size(); }
    std::size_t category_count() const noexcept { return category_labels.size(); }
    std::span<const NeighborCategories::Entry> neighbor_counts(const Visit& v) const;
};

/// Everything a crawler can observe: the graph, the category of every node and
/// the per-node neighbor-category multisets. Cheap to copy; shares storage.
class CrawlContext {
public:
    CrawlContext(WeightedGraph graph, CategoryPartition partition);
    explicit CrawlContext(WeightedGraph graph);
    CrawlContext(std::shared_ptr<const WeightedGraph> graph, std::shared_ptr<const CategoryPartition> partition);

    /// Context over a re-weighted copy of the same topology.
    CrawlContext with_graph(WeightedGraph graph) const;

    const WeightedGraph& graph() const noexcept { return *graph_; }
    const CategoryPartition& partition() const noexcept { return *partition_; }
    const NeighborCategories& neighbors() const noexcept { return *neighbors_; }

    std::shared_ptr<const WeightedGraph> graph_ptr() const noexcept { return graph_; }
    std::shared_ptr<const CategoryPartition> partition_ptr() const noexcept { return partition_; }

private:
    CrawlContext() = default;

    std::shared_ptr<const WeightedGraph> graph_;
    std::shared_ptr<const CategoryPartition> partition_;
    std::shared_ptr<const NeighborCategories> neighbors_;
};

/// Per-node cumulative transition masses over the adjacency lists.
/// Self-loops carry double mass. Zero-mass entries are never selected.
class TransitionTable {
public:
    /// Mass 1 per edge endpoint (simple random walk).
    static TransitionTable unit(const WeightedGraph& g);
    /// Mass w(u,v) per edge (weighted random walk).
    static TransitionTable weighted(const WeightedGraph& g);

    double mass(NodeId v) const { return mass_[v]; }
    /// Neighbor chosen by a uniform draw u in [0, 1).
    NodeId pick(NodeId v, double u) const;

private:
    explicit TransitionTable(const WeightedGraph& g) : graph_(&g) {}

    const WeightedGraph* graph_;
    std::vector<std::size_t> offsets_;
    std::vector<double> cumulative_;
    std::vector<double> mass_;
};

/// Single walker over a transition table; advances one hop per step().
class Walker {
public:
    Walker(const TransitionTable& table, NodeId start, Rng& rng);

    NodeId position() const noexcept { return position_; }
    NodeId step();

private:
    const TransitionTable* table_;
    NodeId position_;
    Rng* rng_;
};

struct WalkOptions {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;
    std::optional<NodeId> start;
    bool record_neighbors = true;
};

WalkSample uis(const CrawlContext& ctx, std::size_t n, std::uint64_t seed, bool record_neighbors = true);
WalkSample wis(const CrawlContext& ctx, std::span<const double> z, std::size_t n, std::uint64_t seed,
               bool record_neighbors = true);
WalkSample rw(const CrawlContext& ctx, const WalkOptions& opts);
WalkSample mhrw(const CrawlContext& ctx, const WalkOptions& opts);
WalkSample wrw(const CrawlContext& ctx, const WalkOptions& opts);

struct StationaryDistribution {
    std::vector<double> probabilities;
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Solves pi P = pi for the weighted random walk by power iteration.
/// Requires the positive-weight subgraph to be connected and non-bipartite.
StationaryDistribution exact_stationary(const WeightedGraph& g, double tolerance = 1e-12,
                                        std::size_t max_iterations = 1'000'000);

/// Visit frequencies per node.
std::vector<double> empirical_distribution(const WalkSample& s, std::size_t node_count);

double total_variation(std::span<const double> p, std::span<const double> q);

} // namespace swrw
