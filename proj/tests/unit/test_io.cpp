#include "swrw/error.hpp"
#include "swrw/io.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace swrw;

TEST_CASE("edge lists accept comments, blanks and weights", "[io]")
{
    std::istringstream in("# header\n\n1 2\n2 3 0.5  # trailing\n  3 1\t2\n");
    const auto g = read_edge_list(in);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.total_weight() == 2.0 * (1.0 + 0.5 + 2.0));
}

TEST_CASE("malformed edge lines name the line", "[io]")
{
    std::istringstream bad("1 2\n1 x\n");
    CHECK_THROWS_WITH(read_edge_list(bad), Catch::Matchers::ContainsSubstring("line 2"));
    std::istringstream dup("1 2\n2 1\n");
    CHECK_THROWS_AS(read_edge_list(dup), Error);
    std::istringstream too_many("1 2 3 4\n");
    CHECK_THROWS_AS(read_edge_list(too_many), Error);
    CHECK_THROWS_AS(read_edge_list(std::filesystem::path("/nonexistent/graph.txt")), Error);
}

TEST_CASE("edge list round trip", "[io]")
{
    const auto g = GraphBuilder().add_edge(4, 9, 1.5).add_edge(9, 9, 0.25).add_edge(2, 4).build();
    std::stringstream buf;
    write_edge_list(buf, g, true);
    const auto h = read_edge_list(buf);
    REQUIRE(h.edge_count() == g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        CHECK(h.edges()[i].weight == g.edges()[i].weight);
        CHECK(h.original_id(h.edges()[i].u) == g.original_id(g.edges()[i].u));
    }
}

TEST_CASE("category files fill missing nodes with the reserved label", "[io]")
{
    const auto g = GraphBuilder().add_edge(1, 2).add_edge(2, 3).build();
    std::istringstream in("1 red\n3 blue\n");
    const std::vector<std::string> irr{kOtherLabel};
    const auto p = read_categories(in, g, irr);
    CHECK(p.label(p.category_of(*g.find_node(2))) == kOtherLabel);
    CHECK(p.is_irrelevant(p.category_of(*g.find_node(2))));

    std::istringstream in2("1 red\n3 blue\n");
    const auto q = read_categories(in2, g);
    CHECK_FALSE(q.irrelevant().has_value());
    CHECK(q.category_count() == 3);

    std::istringstream unknown("7 red\n");
    CHECK_THROWS_AS(read_categories(unknown, g), Error);
    std::istringstream twice("1 red\n1 blue\n");
    CHECK_THROWS_AS(read_categories(twice, g), Error);
}

TEST_CASE("traces round trip with neighbor counts", "[io]")
{
    const auto g = GraphBuilder().add_edge(10, 20).add_edge(20, 30).add_edge(30, 10).add_edge(30, 40).build();
    const std::vector<std::string> labels{"a", "a", "b", kOtherLabel};
    const std::vector<std::string> irr{kOtherLabel};
    const CrawlContext ctx(g, CategoryPartition::from_node_labels(labels, irr));
    WalkOptions opts;
    opts.n = 50;
    opts.seed = 9;
    const auto s = rw(ctx, opts);
    std::stringstream buf;
    write_trace(buf, s, ctx.graph());
    const auto t = read_trace(buf);
    CHECK(t.sampler == Sampler::rw);
    CHECK(t.seed == 9);
    CHECK(t.category_labels == s.category_labels);
    CHECK(t.irrelevant == s.irrelevant);
    REQUIRE(t.size() == s.size());
    REQUIRE(t.has_neighbor_counts);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(t.visits[i].node == g.original_id(s.visits[i].node));
        CHECK(t.visits[i].degree == s.visits[i].degree);
        CHECK(t.visits[i].category == s.visits[i].category);
        CHECK(t.visits[i].weight == s.visits[i].weight);
        const auto a = s.neighbor_counts(s.visits[i]);
        const auto b = t.neighbor_counts(t.visits[i]);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].category == b[k].category);
            CHECK(a[k].count == b[k].count);
        }
    }
}

TEST_CASE("traces without neighbor counts use five columns", "[io]")
{
    std::istringstream in("# sampler=uis\n# seed=1\nstep,node,degree,category,node_weight\n0,5,2,x,1\n1,6,3,y,1\n");
    const auto t = read_trace(in);
    CHECK_FALSE(t.has_neighbor_counts);
    CHECK(t.category_labels == std::vector<std::string>{"x", "y"});
    CHECK_THROWS_AS(t.neighbor_counts(t.visits[0]), Error);

    std::istringstream bad_step("# sampler=uis\nstep,node,degree,category,node_weight\n1,5,2,x,1\n");
    CHECK_THROWS_AS(read_trace(bad_step), Error);
    std::istringstream no_sampler("step,node,degree,category,node_weight\n");
    CHECK_THROWS_AS(read_trace(no_sampler), Error);
}

TEST_CASE("numbers format for exact round trip", "[io]")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(25.5) == "25.5");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("plan and allocation CSV headers", "[io]")
{
    EdgeWeightPlan plan;
    plan.labels = {"a"};
    plan.vol_hat = {1.0};
    plan.vol_tilde = {1.0};
    plan.w_wis = {0.5};
    plan.w_tilde = {0.5};
    plan.w_edge = {0.5};
    std::ostringstream out;
    write_plan(out, plan);
    CHECK(out.str() == "category,vol_hat,vol_tilde,w_wis,w_tilde,w_edge\na,1,1,0.5,0.5,0.5\n");

    StratumSpec spec;
    spec.strata = {{"a", 3.0, 2.0, true}};
    spec.budget = 10.0;
    std::ostringstream alloc;
    write_allocation(alloc, spec, allocate(spec, Objective::mean));
    CHECK(alloc.str() == "category,size,sigma,n_i,weight\na,3,2,10,10\n");
}
