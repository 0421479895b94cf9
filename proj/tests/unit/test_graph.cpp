#include "swrw/error.hpp"
#include "swrw/graph.hpp"
#include "swrw/rng.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>
#include <set>

using namespace swrw;
using Catch::Matchers::WithinAbs;

namespace {

// Triangle 1-2-3 with a self-loop at 3.
WeightedGraph looped_triangle()
{
    return GraphBuilder().add_edge(1, 2, 2.0).add_edge(2, 3, 3.0).add_edge(1, 3, 1.0).add_edge(3, 3, 0.5).build();
}

} // namespace

TEST_CASE("degrees and weights count a self-loop twice", "[graph]")
{
    const auto g = looped_triangle();
    REQUIRE(g.node_count() == 3);
    REQUIRE(g.edge_count() == 4);
    const NodeId n3 = *g.find_node(3);
    CHECK(g.degree(*g.find_node(1)) == 2);
    CHECK(g.degree(n3) == 4);
    CHECK(g.volume() == 8);
    CHECK(g.node_weight(*g.find_node(1)) == 3.0);
    CHECK(g.node_weight(*g.find_node(2)) == 5.0);
    CHECK(g.node_weight(n3) == 5.0);
    CHECK(g.total_weight() == 13.0);
    CHECK(g.has_self_loop(n3));
    CHECK_FALSE(g.has_self_loop(*g.find_node(1)));
    CHECK_FALSE(g.unit_weights());
}

TEST_CASE("ids are remapped in ascending order", "[graph]")
{
    const auto g = GraphBuilder().add_edge(10, 5).add_edge(7, 10).build();
    CHECK(g.original_id(0) == 5);
    CHECK(g.original_id(1) == 7);
    CHECK(g.original_id(2) == 10);
    CHECK(g.find_node(7) == NodeId{1});
    CHECK_FALSE(g.find_node(6).has_value());
    CHECK(g.unit_weights());
    for (const Edge& e : g.edges()) {
        CHECK(e.u <= e.v);
    }
}

TEST_CASE("isolated nodes are kept", "[graph]")
{
    const auto g = GraphBuilder().add_node(4).add_edge(0, 1).build();
    REQUIRE(g.node_count() == 3);
    CHECK(g.degree(*g.find_node(4)) == 0);
    CHECK_FALSE(is_connected(g));
}

TEST_CASE("invalid input is rejected", "[graph]")
{
    CHECK_THROWS_AS(GraphBuilder().add_edge(1, 2).add_edge(2, 1).build(), Error);
    CHECK_THROWS_AS(GraphBuilder().add_edge(-1, 2), Error);
    CHECK_THROWS_AS(GraphBuilder().add_edge(1, 2, -0.5), Error);
    CHECK_THROWS_AS(GraphBuilder().add_edge(1, 2, std::nan("")), Error);
    CHECK_THROWS_AS(GraphBuilder().add_edge(1, 2, INFINITY), Error);
    const auto g = looped_triangle();
    CHECK_THROWS_AS(g.degree(3), Error);
    CHECK_THROWS_AS(g.neighbors(17), Error);
    CHECK_THROWS_AS(g.with_edge_weights({1.0}), Error);
}

TEST_CASE("zero-weight edges split positive components", "[graph]")
{
    const auto g = GraphBuilder().add_edge(0, 1).add_edge(1, 2, 0.0).add_edge(2, 3).build();
    std::size_t count = 0;
    const auto comp = positive_components(g, &count);
    CHECK(count == 2);
    CHECK(comp[0] == comp[1]);
    CHECK(comp[2] == comp[3]);
    CHECK(comp[1] != comp[2]);
    CHECK_FALSE(is_connected(g));
    CHECK(is_connected(g.with_edge_weights({1.0, 1.0, 1.0})));
}

TEST_CASE("re-weighting keeps topology", "[graph]")
{
    const auto g = looped_triangle();
    const auto h = g.with_edge_weights({1.0, 1.0, 1.0, 1.0});
    REQUIRE(h.edge_count() == g.edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CHECK(h.degree(v) == g.degree(v));
        CHECK(h.node_weight(v) == static_cast<double>(h.degree(v)));
    }
    CHECK(h.unit_weights());
}

TEST_CASE("adjacency is consistent with the edge list", "[graph][property]")
{
    const auto seed = GENERATE(range(1, 21));
    Rng rng(static_cast<std::uint64_t>(seed));
    const std::size_t n = 5 + rng.index(40);
    GraphBuilder b;
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < 3 * n; ++k) {
        auto u = static_cast<std::int64_t>(rng.index(n));
        auto v = static_cast<std::int64_t>(rng.index(n));
        if (u > v) {
            std::swap(u, v);
        }
        if (!seen.insert({u, v}).second) {
            continue;
        }
        const double w = 0.1 + rng.uniform();
        b.add_edge(u, v, w);
        weight_sum += w;
    }
    const auto g = b.build();
    std::uint64_t deg_sum = 0;
    double node_weight_sum = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        deg_sum += g.degree(v);
        node_weight_sum += g.node_weight(v);
        double incident = 0.0;
        auto nbrs = g.neighbors(v);
        auto ws = g.neighbor_weights(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            incident += nbrs[i] == v ? 2.0 * ws[i] : ws[i];
        }
        CHECK_THAT(incident, WithinAbs(g.node_weight(v), 1e-12));
    }
    CHECK(deg_sum == 2 * g.edge_count());
    CHECK(deg_sum == g.volume());
    CHECK_THAT(node_weight_sum, WithinAbs(2.0 * weight_sum, 1e-9));
    CHECK_THAT(g.total_weight(), WithinAbs(2.0 * weight_sum, 1e-9));
}

TEST_CASE("dense builder keeps every id", "[graph]")
{
    const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
    const auto g = build_dense_graph(4, edges);
    CHECK(g.node_count() == 4);
    CHECK(g.original_id(3) == 3);
    CHECK_THROWS_AS(build_dense_graph(2, edges), Error);
}
