#include "swrw/graph.hpp"

#include "swrw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace swrw {

namespace {

void validate_weight(double w, std::int64_t u, std::int64_t v)
{
    if (!std::isfinite(w) || w < 0.0) {
        throw Error("invalid weight " + std::to_string(w) + " on edge {" + std::to_string(u) + "," +
                    std::to_string(v) + "}");
    }
}

} // namespace

void WeightedGraph::check_node(NodeId v) const
{
    if (v >= degree_.size()) {
        throw Error("unknown node " + std::to_string(v));
    }
}

std::uint32_t WeightedGraph::degree(NodeId v) const
{
    check_node(v);
    return degree_[v];
}

double WeightedGraph::node_weight(NodeId v) const
{
    check_node(v);
    return node_weight_[v];
}

bool WeightedGraph::has_self_loop(NodeId v) const
{
    check_node(v);
    return self_loop_[v] != 0;
}

std::span<const NodeId> WeightedGraph::neighbors(NodeId v) const
{
    check_node(v);
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const double> WeightedGraph::neighbor_weights(NodeId v) const
{
    check_node(v);
    return {adjacency_weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const EdgeIndex> WeightedGraph::incident_edges(NodeId v) const
{
    check_node(v);
    return {adjacency_edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::int64_t WeightedGraph::original_id(NodeId v) const
{
    check_node(v);
    return original_ids_[v];
}

std::optional<NodeId> WeightedGraph::find_node(std::int64_t original) const
{
    auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
    if (it == original_ids_.end() || *it != original) {
        return std::nullopt;
    }
    return static_cast<NodeId>(it - original_ids_.begin());
}

WeightedGraph WeightedGraph::with_edge_weights(std::vector<double> weights) const
{
    if (weights.size() != edges_.size()) {
        throw Error("edge weight vector has " + std::to_string(weights.size()) + " entries, expected " +
                    std::to_string(edges_.size()));
    }
    WeightedGraph out = *this;
    for (std::size_t e = 0; e < weights.size(); ++e) {
        validate_weight(weights[e], original_ids_[edges_[e].u], original_ids_[edges_[e].v]);
        out.edges_[e].weight = weights[e];
    }
    out.finalize();
    return out;
}

// Builds CSR adjacency from edges_ (sorted by (u, v), u <= v). Neighbor lists
// come out sorted: the first pass appends smaller endpoints in ascending
// order, the second appends endpoints >= the owner in ascending order.
void WeightedGraph::finalize()
{
    const std::size_t n = original_ids_.size();
    degree_.assign(n, 0);
    node_weight_.assign(n, 0.0);
    self_loop_.assign(n, 0);
    std::vector<std::size_t> slots(n, 0);
    unit_weights_ = true;
    for (const Edge& e : edges_) {
        if (e.weight != 1.0) {
            unit_weights_ = false;
        }
        if (e.is_loop()) {
            degree_[e.u] += 2;
            node_weight_[e.u] += 2.0 * e.weight;
            self_loop_[e.u] = 1;
            slots[e.u] += 1;
        } else {
            degree_[e.u] += 1;
            degree_[e.v] += 1;
            node_weight_[e.u] += e.weight;
            node_weight_[e.v] += e.weight;
            slots[e.u] += 1;
            slots[e.v] += 1;
        }
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        offsets_[v + 1] = offsets_[v] + slots[v];
    }
    adjacency_.assign(offsets_[n], 0);
    adjacency_weights_.assign(offsets_[n], 0.0);
    adjacency_edges_.assign(offsets_[n], 0);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    auto put = [&](NodeId owner, NodeId nbr, EdgeIndex idx) {
        const std::size_t pos = cursor[owner]++;
        adjacency_[pos] = nbr;
        adjacency_weights_[pos] = edges_[idx].weight;
        adjacency_edges_[pos] = idx;
    };
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!edges_[i].is_loop()) {
            put(edges_[i].v, edges_[i].u, static_cast<EdgeIndex>(i));
        }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        put(edges_[i].u, edges_[i].v, static_cast<EdgeIndex>(i));
    }
    total_weight_ = 0.0;
    volume_ = 0;
    for (std::size_t v = 0; v < n; ++v) {
        total_weight_ += node_weight_[v];
        volume_ += degree_[v];
    }
}

GraphBuilder& GraphBuilder::add_node(std::int64_t id)
{
    if (id < 0) {
        throw Error("node ids must be nonnegative, got " + std::to_string(id));
    }
    nodes_.push_back(id);
    return *this;
}

GraphBuilder& GraphBuilder::add_edge(std::int64_t u, std::int64_t v, double weight)
{
    if (u < 0 || v < 0) {
        throw Error("node ids must be nonnegative, got {" + std::to_string(u) + "," + std::to_string(v) + "}");
    }
    validate_weight(weight, u, v);
    edges_.push_back({u, v, weight});
    return *this;
}

GraphBuilder& GraphBuilder::reserve(std::size_t edges)
{
    edges_.reserve(edges);
    return *this;
}

WeightedGraph GraphBuilder::build() const
{
    std::vector<std::int64_t> ids = nodes_;
    ids.reserve(nodes_.size() + 2 * edges_.size());
    for (const EdgeSpec& e : edges_) {
        ids.push_back(e.u);
        ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > std::numeric_limits<NodeId>::max()) {
        throw Error("too many nodes");
    }
    auto dense = [&](std::int64_t id) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    WeightedGraph g;
    g.edges_.reserve(edges_.size());
    for (const EdgeSpec& e : edges_) {
        NodeId a = dense(e.u);
        NodeId b = dense(e.v);
        if (a > b) {
            std::swap(a, b);
        }
        g.edges_.push_back({a, b, e.weight.value_or(1.0)});
    }
    g.original_ids_ = std::move(ids);
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const Edge& x, const Edge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
    for (std::size_t i = 1; i < g.edges_.size(); ++i) {
        if (g.edges_[i].u == g.edges_[i - 1].u && g.edges_[i].v == g.edges_[i - 1].v) {
            throw Error("duplicate edge {" + std::to_string(g.original_ids_[g.edges_[i].u]) + "," +
                        std::to_string(g.original_ids_[g.edges_[i].v]) + "}");
        }
    }
    g.finalize();
    return g;
}

WeightedGraph build_graph(std::span<const EdgeSpec> edges)
{
    GraphBuilder b;
    b.reserve(edges.size());
    for (const EdgeSpec& e : edges) {
        b.add_edge(e.u, e.v, e.weight.value_or(1.0));
    }
    return b.build();
}

WeightedGraph build_dense_graph(std::size_t node_count, std::span<const Edge> edges)
{
    GraphBuilder b;
    b.reserve(edges.size());
    for (std::size_t v = 0; v < node_count; ++v) {
        b.add_node(static_cast<std::int64_t>(v));
    }
    for (const Edge& e : edges) {
        if (e.u >= node_count || e.v >= node_count) {
            throw Error("edge endpoint out of range for dense graph");
        }
        b.add_edge(e.u, e.v, e.weight);
    }
    return b.build();
}

std::vector<std::uint32_t> positive_components(const WeightedGraph& g, std::size_t* count)
{
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> comp(g.node_count(), unset);
    std::vector<NodeId> stack;
    std::uint32_t next = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (comp[s] != unset) {
            continue;
        }
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            auto nbrs = g.neighbors(u);
            auto ws = g.neighbor_weights(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                if (ws[i] > 0.0 && comp[nbrs[i]] == unset) {
                    comp[nbrs[i]] = next;
                    stack.push_back(nbrs[i]);
                }
            }
        }
        ++next;
    }
    if (count != nullptr) {
        *count = next;
    }
    return comp;
}

bool is_connected(const WeightedGraph& g)
{
    std::size_t count = 0;
    positive_components(g, &count);
    return count <= 1;
}

} // namespace swrw
