#include "swrw/error.hpp"
#include "swrw/scenarios.hpp"

#include <catch_amalgamated.hpp>

using namespace swrw;

namespace {

std::size_t count_label(const Scenario& s, CategoryId c)
{
    std::size_t k = 0;
    for (NodeId v = 0; v < s.graph.node_count(); ++v) {
        k += s.partition.category_of(v) == c ? 1 : 0;
    }
    return k;
}

} // namespace

TEST_CASE("two-community sizes at scale 0.1", "[scenarios]")
{
    ScenarioSpec spec;
    const auto s = gen_two_community(spec, 1);
    CHECK(s.name == "two_community_random");
    CHECK(s.graph.node_count() == 10100);
    CHECK(s.graph.edge_count() == 50550);
    CHECK(is_connected(s.graph));
    REQUIRE(s.tiny);
    REQUIRE(s.big);
    CHECK(s.partition.size(*s.tiny) == 100);
    CHECK(s.partition.size(*s.big) == 10000);
    CHECK(count_label(s, *s.tiny) == 100);
    CHECK_FALSE(s.partition.irrelevant().has_value());
}

TEST_CASE("two-community sizes at full scale", "[scenarios][slow]")
{
    ScenarioSpec spec;
    spec.scale = 1.0;
    const auto s = gen_two_community(spec, 2);
    CHECK(s.graph.node_count() == 101000);
    CHECK(s.graph.edge_count() == 505500);
    CHECK(is_connected(s.graph));
}

TEST_CASE("irrelevant factor appends a block at big-community density", "[scenarios]")
{
    ScenarioSpec spec;
    spec.irrelevant_factor = 4.0;
    const auto s = gen_two_community(spec, 3);
    // 40400 block nodes, 5 edges per node inside, one cross edge each.
    CHECK(s.graph.node_count() == 10100 + 40400);
    CHECK(s.graph.edge_count() == 50550 + 202000 + 40400);
    CHECK(is_connected(s.graph));
    REQUIRE(s.partition.irrelevant());
    const auto irr = *s.partition.irrelevant();
    CHECK(s.partition.size(irr) == 40400);
    CHECK(s.partition.size(*s.tiny) == 100);
    CHECK(s.partition.size(*s.big) == 10000);

    // The relevant part is the unaugmented graph.
    const auto base = gen_two_community(ScenarioSpec{}, 3);
    std::size_t relevant_edges = 0;
    std::size_t cross = 0;
    for (const Edge& e : s.graph.edges()) {
        const bool iu = s.partition.category_of(e.u) == irr;
        const bool iv = s.partition.category_of(e.v) == irr;
        relevant_edges += (!iu && !iv) ? 1 : 0;
        cross += (iu != iv) ? 1 : 0;
    }
    CHECK(relevant_edges == base.graph.edge_count());
    CHECK(cross == 40400);

    spec.irrelevant_links = 0.5;
    CHECK(gen_two_community(spec, 3).graph.edge_count() == 50550 + 202000 + 20200);
    spec.irrelevant_links = 0.0;
    CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("generation is deterministic and label modes share topology", "[scenarios]")
{
    ScenarioSpec spec;
    spec.scale = 0.05;
    const auto a = gen_two_community(spec, 9);
    const auto b = gen_two_community(spec, 9);
    spec.labels = LabelMode::clustered;
    const auto c = gen_two_community(spec, 9);
    CHECK(c.name == "two_community_clustered");
    REQUIRE(a.graph.edge_count() == c.graph.edge_count());
    for (std::size_t i = 0; i < a.graph.edge_count(); ++i) {
        CHECK(a.graph.edges()[i].u == b.graph.edges()[i].u);
        CHECK(a.graph.edges()[i].v == c.graph.edges()[i].v);
    }
    for (NodeId v = 0; v < a.graph.node_count(); ++v) {
        CHECK(a.partition.category_of(v) == b.partition.category_of(v));
    }
    const auto d = gen_two_community(spec, 10);
    bool differs = false;
    for (std::size_t i = 0; i < d.graph.edge_count() && !differs; ++i) {
        differs = d.graph.edges()[i].u != c.graph.edges()[i].u || d.graph.edges()[i].v != c.graph.edges()[i].v;
    }
    CHECK(differs);
}

TEST_CASE("clustered labels stay within the first community", "[scenarios]")
{
    ScenarioSpec spec;
    spec.scale = 0.05;
    spec.labels = LabelMode::clustered;
    const auto s = gen_two_community(spec, 4);
    // In the clustered mode tiny nodes have most neighbors tiny.
    std::size_t inside = 0;
    std::size_t total = 0;
    for (const Edge& e : s.graph.edges()) {
        const bool tu = s.partition.category_of(e.u) == *s.tiny;
        const bool tv = s.partition.category_of(e.v) == *s.tiny;
        if (tu || tv) {
            ++total;
            inside += (tu && tv) ? 1 : 0;
        }
    }
    CHECK(static_cast<double>(inside) / static_cast<double>(total) > 0.8);
}

TEST_CASE("infeasible specs are rejected", "[scenarios]")
{
    ScenarioSpec spec;
    spec.scale = 0.01;
    CHECK_THROWS_AS(gen_two_community(spec, 1), Error);
    spec.scale = -1.0;
    CHECK_THROWS_AS(spec.validate(), Error);
    CHECK_THROWS_AS(gen_toy_a(3, 1), Error);
    CHECK_THROWS_AS(parse_scenario_kind("ring"), Error);
    CHECK_THROWS_AS(parse_label_mode("striped"), Error);
}

TEST_CASE("toy A structure", "[scenarios]")
{
    const auto s = gen_toy_a(4, 5);
    CHECK(s.graph.node_count() == 9);
    CHECK(s.graph.edge_count() == 12);
    REQUIRE(s.partition.irrelevant());
    CHECK(s.partition.size(*s.tiny) == 4);
    CHECK(s.partition.size(*s.big) == 4);
    std::size_t w1 = 0;
    std::size_t w2 = 0;
    for (std::size_t i = 0; i < s.slots.size(); ++i) {
        const Edge& e = s.graph.edges()[i];
        const bool hub = s.partition.is_irrelevant(s.partition.category_of(e.u)) ||
                         s.partition.is_irrelevant(s.partition.category_of(e.v));
        CHECK(s.slots[i] == (hub ? Slot::w2 : Slot::w1));
        if (!hub) {
            CHECK(s.partition.category_of(e.u) == s.partition.category_of(e.v));
        }
        w1 += s.slots[i] == Slot::w1 ? 1 : 0;
        w2 += s.slots[i] == Slot::w2 ? 1 : 0;
    }
    CHECK(w1 == 4);
    CHECK(w2 == 8);
    const auto g = apply_slot_weights(s, 0.25, 0.75);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!s.partition.is_irrelevant(s.partition.category_of(v))) {
            CHECK(g.node_weight(v) == 1.0);
        }
    }
}

TEST_CASE("toy B structure and WIS ratio", "[scenarios]")
{
    CHECK(toy_b_wis_ratio(20, 2) == 190.0);
    const auto s = gen_toy_b(20, 2, 1, 6);
    CHECK(s.graph.node_count() == 22);
    CHECK(s.graph.edge_count() == 190 + 1 + 2);
    CHECK(is_connected(s.graph));
    const auto g = apply_slot_weights(s, 190.0, 1.0);
    // Intra-category weight: the tiny edge alone carries 190, the clique 190 edges of weight 1.
    double tiny_intra = 0.0;
    double big_intra = 0.0;
    for (const Edge& e : g.edges()) {
        const auto cu = s.partition.category_of(e.u);
        const auto cv = s.partition.category_of(e.v);
        if (cu == cv) {
            (cu == *s.tiny ? tiny_intra : big_intra) += e.weight;
        }
    }
    CHECK(tiny_intra == big_intra);
}

TEST_CASE("weighting tiny edges leaves others at one", "[scenarios]")
{
    ScenarioSpec spec;
    spec.scale = 0.05;
    const auto s = gen_two_community(spec, 4);
    const auto g = weight_tiny_edges(s, 7.0);
    for (const Edge& e : g.edges()) {
        const bool touches = s.partition.category_of(e.u) == *s.tiny || s.partition.category_of(e.v) == *s.tiny;
        CHECK(e.weight == (touches ? 7.0 : 1.0));
    }
}

TEST_CASE("scenario dispatcher", "[scenarios]")
{
    ScenarioSpec spec;
    spec.kind = ScenarioKind::toy_a;
    spec.category_size = 2;
    CHECK(generate(spec, 1).graph.node_count() == 5);
    spec.kind = ScenarioKind::toy_b;
    CHECK(generate(spec, 1).graph.node_count() == 22);
    for (auto k : {ScenarioKind::two_community, ScenarioKind::toy_a, ScenarioKind::toy_b}) {
        CHECK(parse_scenario_kind(to_string(k)) == k);
    }
}
