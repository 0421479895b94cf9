#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace swrw {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// One undirected edge as given by the caller; ids are arbitrary nonnegative integers.
struct EdgeSpec {
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::optional<double> weight;
};

/// Undirected edge in dense ids with u <= v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 1.0;

    bool is_loop() const noexcept { return u == v; }
};

/// Immutable undirected graph with per-edge weights and optional self-loops.
///
/// Node ids are dense (0..N-1). Input ids are remapped in ascending order and
/// the original id of every node is retained for I/O. Adjacency lists are
/// sorted by neighbor id; a self-loop appears once in its node's list but
/// contributes 2 to the degree and twice its weight to the node weight.
class WeightedGraph {
public:
    WeightedGraph() = default;

    std::size_t node_count() const noexcept { return degree_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::uint32_t degree(NodeId v) const;
    double node_weight(NodeId v) const;
    bool has_self_loop(NodeId v) const;

    /// Sum of node weights over V (twice the total edge weight).
    double total_weight() const noexcept { return total_weight_; }
    /// Sum of degrees over V (2|E|).
    std::uint64_t volume() const noexcept { return volume_; }

    std::span<const NodeId> neighbors(NodeId v) const;
    std::span<const double> neighbor_weights(NodeId v) const;
    std::span<const EdgeIndex> incident_edges(NodeId v) const;
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool unit_weights() const noexcept { return unit_weights_; }

    std::int64_t original_id(NodeId v) const;
    std::optional<NodeId> find_node(std::int64_t original) const;

    /// Same topology, new weights indexed like edges().
    WeightedGraph with_edge_weights(std::vector<double> weights) const;

    friend class GraphBuilder;

private:
    void check_node(NodeId v) const;
    void finalize();

    std::vector<Edge> edges_;
    std::vector<std::int64_t> original_ids_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
    std::vector<double> adjacency_weights_;
    std::vector<EdgeIndex> adjacency_edges_;
    std::vector<std::uint32_t> degree_;
    std::vector<double> node_weight_;
    std::vector<char> self_loop_;
    double total_weight_ = 0.0;
    std::uint64_t volume_ = 0;
    bool unit_weights_ = true;
};

/// Collects nodes and edges and produces a WeightedGraph.
///
/// Duplicate undirected edges and negative or non-finite weights are rejected
/// by build(). Nodes may be registered without edges (isolated nodes).
class GraphBuilder {
public:
    GraphBuilder& add_node(std::int64_t id);
    GraphBuilder& add_edge(std::int64_t u, std::int64_t v, double weight = 1.0);
    GraphBuilder& reserve(std::size_t edges);

    WeightedGraph build() const;

private:
    std::vector<std::int64_t> nodes_;
    std::vector<EdgeSpec> edges_;
};

WeightedGraph build_graph(std::span<const EdgeSpec> edges);

/// Graph on node ids 0..node_count-1 (all present even if isolated).
WeightedGraph build_dense_graph(std::size_t node_count, std::span<const Edge> edges);

/// Connected components over edges with weight > 0; returns the component id of every node.
std::vector<std::uint32_t> positive_components(const WeightedGraph& g, std::size_t* count = nullptr);

bool is_connected(const WeightedGraph& g);

} // namespace swrw
