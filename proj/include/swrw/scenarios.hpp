#pragma once

#include "swrw/graph.hpp"
#include "swrw/partition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swrw {

enum class ScenarioKind { two_community, toy_a, toy_b };
enum class LabelMode { random, clustered };

std::string_view to_string(ScenarioKind k) noexcept;
std::string_view to_string(LabelMode m) noexcept;
ScenarioKind parse_scenario_kind(std::string_view name);
LabelMode parse_label_mode(std::string_view name);

/// Parameters of the synthetic scenarios. Two-community sizes and edge counts
/// are given at scale 1 and multiplied by `scale`.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::two_community;
    double scale = 0.1;
    LabelMode labels = LabelMode::random;

    std::size_t tiny_size = 1'000;
    std::size_t big_size = 100'000;
    std::size_t tiny_edges = 5'000;
    std::size_t big_edges = 500'000;
    std::size_t inter_edges = 500;
    /// Irrelevant nodes added as a multiple of the relevant population. They
    /// form a third block at the big community's density; the relevant part
    /// is the unaugmented graph.
    double irrelevant_factor = 0.0;
    /// Uniform cross edges between the irrelevant block and the relevant nodes, per irrelevant node.
    double irrelevant_links = 1.0;

    std::size_t category_size = 4; ///< toy_a: nodes per relevant category
    std::size_t clique_size = 20;  ///< toy_b
    std::size_t toy_tiny_size = 2; ///< toy_b
    std::size_t attachment = 1;    ///< toy_b: clique neighbors per tiny node

    void validate() const;
};

/// Edge weight slots of the toy graphs.
enum class Slot : std::uint8_t { none = 0, w1 = 1, w2 = 2 };

struct Scenario {
    std::string name;
    WeightedGraph graph;
    CategoryPartition partition;
    /// Category whose size is the estimation target (tiny / red).
    std::optional<CategoryId> tiny;
    std::optional<CategoryId> big;
    /// Toy graphs: slot of every edge, indexed like graph.edges().
    std::vector<Slot> slots;
};

/// Two randomly wired communities joined by uniformly random inter-community
/// edges. Each community gets a random spanning tree plus uniform extra edges
/// up to its edge count, so the graph is connected with exact edge totals.
Scenario gen_two_community(const ScenarioSpec& spec, std::uint64_t seed);

/// Hub (irrelevant) plus two relevant categories; every relevant node has one
/// intra-category edge (slot w1) and one hub edge (slot w2).
Scenario gen_toy_a(std::size_t category_size, std::uint64_t seed);

/// Clique (slot w2) plus a tiny category whose incident edges carry slot w1;
/// each tiny node attaches to `attachment` random clique nodes.
Scenario gen_toy_b(std::size_t clique_size, std::size_t tiny_size, std::size_t attachment, std::uint64_t seed);

Scenario generate(const ScenarioSpec& spec, std::uint64_t seed);

/// Toy graph with slot weights applied.
WeightedGraph apply_slot_weights(const Scenario& s, double w1, double w2);

/// Copy of the scenario graph where every edge incident on the tiny category has weight w.
WeightedGraph weight_tiny_edges(const Scenario& s, double w);

/// w1/w2 that equalizes the intra-category weights of the toy_b categories.
double toy_b_wis_ratio(std::size_t clique_size, std::size_t tiny_size);

} // namespace swrw
