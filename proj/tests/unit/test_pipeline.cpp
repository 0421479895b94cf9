#include "swrw/error.hpp"
#include "swrw/pipeline.hpp"
#include "swrw/rng.hpp"

#include <catch_amalgamated.hpp>

using namespace swrw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("conflict rule names round trip", "[pipeline]")
{
    for (ConflictRule r : {ConflictRule::arithmetic, ConflictRule::geometric, ConflictRule::max, ConflictRule::hybrid}) {
        CHECK(parse_conflict_rule(to_string(r)) == r);
    }
    CHECK_THROWS_AS(parse_conflict_rule("min"), Error);
}

TEST_CASE("irrelevant mass is a fraction of relevant mass", "[pipeline]")
{
    const std::vector<double> w{1.0, 1.0, 0.0};
    const auto out = inject_irrelevant_mass(w, CategoryId{2}, 0.01);
    CHECK(out[0] == 1.0);
    CHECK_THAT(out[2], WithinAbs(0.02, 1e-15));
    bool warned = false;
    const auto same = inject_irrelevant_mass(std::vector<double>{1.0, 2.0}, std::nullopt, 0.01, &warned);
    CHECK(warned);
    CHECK(same[1] == 2.0);
    CHECK_THROWS_AS(inject_irrelevant_mass(w, CategoryId{2}, 1.0), Error);
}

TEST_CASE("clamping raises small volumes to max over gamma", "[pipeline]")
{
    const std::vector<double> v{1000.0, 2.0};
    const auto c = clamp_volumes(v, 100.0, std::nullopt);
    CHECK(c.vol_min == 10.0);
    CHECK(c.volumes[0] == 1000.0);
    CHECK(c.volumes[1] == 10.0);
    // The irrelevant category does not set the scale.
    const std::vector<double> w{5.0, 1.0, 1e6};
    CHECK(clamp_volumes(w, 5.0, CategoryId{2}).vol_min == 1.0);
    CHECK_THROWS_AS(clamp_volumes(v, 0.5, std::nullopt), Error);
    CHECK_THROWS_AS(clamp_volumes(std::vector<double>{0.0, 0.0}, 2.0, std::nullopt), PilotError);
}

TEST_CASE("conflict rules by hand", "[pipeline]")
{
    CHECK(resolve_edge(4, 1, false, ConflictRule::hybrid) == 4.0);
    CHECK(resolve_edge(4, 1, true, ConflictRule::hybrid) == 2.0);
    CHECK(resolve_edge(4, 1, false, ConflictRule::arithmetic) == 2.5);
    CHECK(resolve_edge(4, 1, false, ConflictRule::geometric) == 2.0);
    CHECK(resolve_edge(4, 1, true, ConflictRule::max) == 4.0);
}

TEST_CASE("resolve_conflicts assigns intra and inter weights", "[pipeline]")
{
    // a: {0,1}, b: {2}, irrelevant: {3}
    const auto g = GraphBuilder().add_edge(0, 1).add_edge(1, 2).add_edge(2, 3).add_edge(0, 3).build();
    const CategoryPartition p({"a", "b", "x"}, {0, 0, 1, 2}, CategoryId{2});
    const std::vector<double> t{4.0, 1.0, 0.25};
    const auto h = resolve_conflicts(g, p, t, ConflictRule::hybrid);
    // edges sorted: (0,1) (0,3) (1,2) (2,3)
    CHECK(h.edges()[0].weight == 4.0);
    CHECK(h.edges()[1].weight == 1.0);
    CHECK(h.edges()[2].weight == 4.0);
    CHECK(h.edges()[3].weight == 0.5);
}

TEST_CASE("gamma of one gives equal edge weights across relevant categories", "[pipeline]")
{
    const CategoryPartition p({"a", "b"}, {0, 0, 0, 1});
    SwrwConfig cfg;
    cfg.gamma = 1.0;
    const auto plan = plan_edge_weights(p, cfg, {0.9, 0.1});
    CHECK_THAT(plan.w_edge[0], WithinRel(plan.w_edge[1], 1e-14));
    CHECK(plan.vol_tilde[1] == 0.9);
    CHECK_FALSE(plan.warnings.empty());
}

TEST_CASE("plan with an irrelevant category by hand", "[pipeline]")
{
    const CategoryPartition p({"tiny", "big", "other"}, {0, 1, 2}, CategoryId{2});
    SwrwConfig cfg;
    cfg.gamma = 10.0;
    cfg.f_irrelevant = 0.1;
    const auto plan = plan_edge_weights(p, cfg, {0.001, 0.2, 0.799});
    CHECK_THAT(plan.vol_min, WithinRel(0.02, 1e-14));
    CHECK_THAT(plan.vol_tilde[0], WithinRel(0.02, 1e-14));
    // sizes objective splits evenly over the two relevant categories.
    CHECK_THAT(plan.w_wis[0], WithinRel(0.5, 1e-14));
    CHECK(plan.w_wis[2] == 0.0);
    CHECK_THAT(plan.w_tilde[2], WithinRel(0.1, 1e-14));
    CHECK_THAT(plan.w_edge[0], WithinRel(25.0, 1e-12));
    CHECK_THAT(plan.w_edge[1], WithinRel(2.5, 1e-12));
    CHECK_THAT(plan.w_edge[2], WithinRel(0.1 / 0.799, 1e-12));
    CHECK(plan.warnings.empty());
}

TEST_CASE("arbitrary node weights on a two-node path", "[pipeline]")
{
    const auto g = GraphBuilder().add_edge(0, 1).add_edge(0, 0).add_edge(1, 1).build();
    const auto h = arbitrary_node_weights(g, std::vector<double>{1.0, 3.0});
    // edges sorted: (0,0) (0,1) (1,1)
    CHECK_THAT(h.edges()[1].weight, WithinAbs(0.5, 1e-15));
    CHECK_THAT(h.edges()[0].weight, WithinAbs(0.25, 1e-15));
    CHECK_THAT(h.edges()[2].weight, WithinAbs(1.25, 1e-15));
    CHECK_THAT(h.node_weight(0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(h.node_weight(1), WithinAbs(3.0, 1e-15));
    CHECK_THROWS_AS(arbitrary_node_weights(GraphBuilder().add_edge(0, 1).build(), std::vector<double>{1.0, 1.0}),
                    Error);
}

TEST_CASE("the smaller relevant category keeps at least its planned share", "[pipeline][property]")
{
    // For two relevant categories the re-weighted share of the smaller one
    // is never below the share the plan assigns to it.
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const double small = 1e-4 + 0.2 * rng.uniform();
        const double large = small + rng.uniform();
        const double irr = rng.uniform();
        const double gamma = 1.0 + 500.0 * rng.uniform();
        const CategoryPartition p({"s", "l", "x"}, {0, 1, 2}, CategoryId{2});
        SwrwConfig cfg;
        cfg.gamma = gamma;
        const auto plan = plan_edge_weights(p, cfg, {small, large, irr});
        // Mass the WRW puts on each category ignoring boundary edges: w_edge * true volume.
        const double ms = plan.w_edge[0] * small;
        const double ml = plan.w_edge[1] * large;
        const double planned = plan.w_tilde[0] / (plan.w_tilde[0] + plan.w_tilde[1]);
        const double clamped_share = ms / (ms + ml);
        CHECK(clamped_share <= planned + 1e-12);
        const double achieved_vs_proportional = clamped_share / (small / (small + large));
        CHECK(achieved_vs_proportional >= 1.0 - 1e-12);
    }
}

TEST_CASE("plans are invariant to scaling the volume estimates", "[pipeline][property]")
{
    const CategoryPartition p({"a", "b", "x"}, {0, 1, 2}, CategoryId{2});
    SwrwConfig cfg;
    const auto a = plan_edge_weights(p, cfg, {0.002, 0.3, 0.698});
    const auto b = plan_edge_weights(p, cfg, {2.0, 300.0, 698.0});
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK_THAT(a.w_edge[c] / a.w_edge[1], WithinRel(b.w_edge[c] / b.w_edge[1], 1e-12));
    }
}

TEST_CASE("config validation", "[pipeline]")
{
    SwrwConfig cfg;
    CHECK(cfg.pilot_for(1000) == 65);
    cfg.pilot_length = 7;
    CHECK(cfg.pilot_for(1000) == 7);
    cfg.gamma = 0.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.gamma = 2.0;
    cfg.f_irrelevant = -0.1;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("end-to-end run accounts for the pilot", "[pipeline]")
{
    // Two triangles joined by a bridge, one side tiny.
    const auto g = GraphBuilder()
                       .add_edge(0, 1)
                       .add_edge(1, 2)
                       .add_edge(0, 2)
                       .add_edge(2, 3)
                       .add_edge(3, 4)
                       .add_edge(4, 5)
                       .add_edge(3, 5)
                       .add_edge(5, 6)
                       .add_edge(6, 3)
                       .build();
    const CrawlContext ctx(g, CategoryPartition({"a", "b"}, {0, 0, 0, 1, 1, 1, 1}));
    SwrwConfig cfg;
    cfg.pilot_length = 50;
    const auto r = run_swrw(ctx, cfg, 400, 17);
    CHECK(r.sample.size() == 400);
    CHECK(r.pilot.size() == 50);
    CHECK(r.cost() == 450);
    CHECK(r.sample.sampler == Sampler::swrw);
    CHECK(r.category_coverage == 1.0);
    CHECK_FALSE(r.confined);
    const auto again = run_swrw(ctx, cfg, 400, 17);
    for (std::size_t i = 0; i < 400; ++i) {
        CHECK(again.sample.visits[i].node == r.sample.visits[i].node);
    }
}
