#include "swrw/error.hpp"
#include "swrw/partition.hpp"

#include <catch_amalgamated.hpp>

using namespace swrw;
using Catch::Matchers::WithinAbs;

TEST_CASE("labels are sorted and irrelevant ones merged last", "[partition]")
{
    const std::vector<std::string> labels{"b", "x", "a", "y", "b"};
    const std::vector<std::string> irr{"x", "y"};
    const auto p = CategoryPartition::from_node_labels(labels, irr);
    REQUIRE(p.category_count() == 3);
    CHECK(p.label(0) == "a");
    CHECK(p.label(1) == "b");
    CHECK(p.label(2) == "__irrelevant__");
    CHECK(p.irrelevant() == CategoryId{2});
    CHECK(p.relevant_count() == 2);
    CHECK(p.category_of(1) == 2);
    CHECK(p.category_of(3) == 2);
    CHECK(p.size(1) == 2);
    CHECK(p.find("b") == CategoryId{1});
    CHECK_FALSE(p.find("x").has_value());
}

TEST_CASE("a single irrelevant label keeps its name", "[partition]")
{
    const std::vector<std::string> labels{"a", kOtherLabel, "a"};
    const std::vector<std::string> irr{kOtherLabel};
    const auto p = CategoryPartition::from_node_labels(labels, irr);
    CHECK(p.label(*p.irrelevant()) == kOtherLabel);
    CHECK(p.is_irrelevant(p.category_of(1)));
}

TEST_CASE("requesting an absent irrelevant label is harmless", "[partition]")
{
    const std::vector<std::string> labels{"a", "b"};
    const std::vector<std::string> irr{kOtherLabel};
    const auto p = CategoryPartition::from_node_labels(labels, irr);
    CHECK_FALSE(p.irrelevant().has_value());
    CHECK(p.relevant_count() == 2);
}

TEST_CASE("explicit construction validates ids", "[partition]")
{
    CHECK_THROWS_AS(CategoryPartition({"a"}, {0, 1}), Error);
    CHECK_THROWS_AS(CategoryPartition({"a", "a"}, {0, 1}), Error);
    CHECK_THROWS_AS(CategoryPartition({"a"}, {0}, CategoryId{3}), Error);
    const auto p = CategoryPartition::single(3);
    CHECK_THROWS_AS(p.category_of(3), Error);
}

TEST_CASE("set statistics of a path with a loop", "[partition]")
{
    // 0-1-2-3 path, loop at 3; categories {0,1} -> a, {2,3} -> b.
    const auto g = GraphBuilder().add_edge(0, 1).add_edge(1, 2, 2.0).add_edge(2, 3).add_edge(3, 3).build();
    const auto p = CategoryPartition({"a", "b"}, {0, 0, 1, 1});
    // degrees 1,2,2,3 -> volume 8; weights 1,3,3,3 -> total 10.
    const auto a = set_stats(g, p, 0);
    const auto b = set_stats(g, p, 1);
    CHECK(a.size == 2);
    CHECK(a.volume == 3);
    CHECK(b.volume == 5);
    CHECK(a.weight == 4.0);
    CHECK(b.weight == 6.0);
    CHECK_THAT(a.size_fraction, WithinAbs(0.5, 1e-15));
    CHECK_THAT(a.volume_fraction + b.volume_fraction, WithinAbs(1.0, 1e-15));
    CHECK_THAT(b.volume_fraction, WithinAbs(5.0 / 8.0, 1e-15));
    CHECK_THROWS_AS(set_stats(g, p, 2), Error);

    const auto sets = category_edge_sets(g, p);
    CHECK(sets.at({0, 0}) == 1);
    CHECK(sets.at({0, 1}) == 1);
    CHECK(sets.at({1, 1}) == 2);
}

TEST_CASE("neighbor category counts sum to the degree", "[partition]")
{
    const auto g = GraphBuilder().add_edge(0, 1).add_edge(1, 2).add_edge(2, 3).add_edge(3, 3).add_edge(1, 3).build();
    const auto p = CategoryPartition({"a", "b"}, {0, 0, 1, 1});
    const NeighborCategories nc(g, p);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::uint32_t total = 0;
        CategoryId last = 0;
        bool first = true;
        for (const auto& e : nc.at(v)) {
            total += e.count;
            if (!first) {
                CHECK(e.category > last);
            }
            last = e.category;
            first = false;
        }
        CHECK(total == g.degree(v));
    }
    // node 3: neighbors 2 (b), 1 (a), loop (b twice)
    const auto at3 = nc.at(3);
    REQUIRE(at3.size() == 2);
    CHECK(at3[0].category == 0);
    CHECK(at3[0].count == 1);
    CHECK(at3[1].count == 3);
}
