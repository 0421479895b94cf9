#include "swrw/scenarios.hpp"

#include "swrw/error.hpp"
#include "swrw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace swrw {

std::string_view to_string(ScenarioKind k) noexcept
{
    switch (k) {
    case ScenarioKind::two_community: return "two_community";
    case ScenarioKind::toy_a: return "toy_a";
    case ScenarioKind::toy_b: return "toy_b";
    }
    return "unknown";
}

std::string_view to_string(LabelMode m) noexcept
{
    return m == LabelMode::random ? "random" : "clustered";
}

ScenarioKind parse_scenario_kind(std::string_view name)
{
    for (ScenarioKind k : {ScenarioKind::two_community, ScenarioKind::toy_a, ScenarioKind::toy_b}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error("unknown scenario '" + std::string(name) + "'");
}

LabelMode parse_label_mode(std::string_view name)
{
    if (name == "random") {
        return LabelMode::random;
    }
    if (name == "clustered") {
        return LabelMode::clustered;
    }
    throw Error("unknown label mode '" + std::string(name) + "'");
}

void ScenarioSpec::validate() const
{
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw Error("scale must be positive");
    }
    if (!(irrelevant_factor >= 0.0) || !std::isfinite(irrelevant_factor)) {
        throw Error("irrelevant factor must be nonnegative");
    }
    if (!(irrelevant_links > 0.0) || !std::isfinite(irrelevant_links)) {
        throw Error("irrelevant links must be positive");
    }
}

namespace {

std::size_t scaled(std::size_t base, double factor)
{
    return static_cast<std::size_t>(std::llround(static_cast<double>(base) * factor));
}

class EdgeSet {
public:
    explicit EdgeSet(std::size_t reserve) { keys_.reserve(reserve); }

    bool insert(NodeId a, NodeId b, std::vector<Edge>& out)
    {
        if (a == b) {
            return false;
        }
        if (a > b) {
            std::swap(a, b);
        }
        const auto key = (static_cast<std::uint64_t>(a) << 32) | b;
        if (!keys_.insert(key).second) {
            return false;
        }
        out.push_back({a, b, 1.0});
        return true;
    }

private:
    std::unordered_set<std::uint64_t> keys_;
};

// Random recursive spanning tree over a shuffled order, then uniform extra edges.
void wire_community(NodeId first, std::size_t size, std::size_t edges, Rng& rng, EdgeSet& seen,
                    std::vector<Edge>& out)
{
    const double possible = 0.5 * static_cast<double>(size) * static_cast<double>(size - 1);
    if (size == 0 || edges + 1 < size || static_cast<double>(edges) > possible) {
        throw Error("infeasible edge count " + std::to_string(edges) + " for community of " + std::to_string(size) +
                    " nodes");
    }
    std::vector<NodeId> order(size);
    std::iota(order.begin(), order.end(), first);
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (std::size_t i = 1; i < size; ++i) {
        seen.insert(order[i], order[rng.index(i)], out);
    }
    std::size_t added = size - 1;
    while (added < edges) {
        const auto a = static_cast<NodeId>(first + rng.index(size));
        const auto b = static_cast<NodeId>(first + rng.index(size));
        added += seen.insert(a, b, out) ? 1 : 0;
    }
}

Scenario finish(std::string name, std::size_t node_count, const std::vector<Edge>& edges,
                const std::vector<std::string>& node_labels, std::vector<std::string> irrelevant_labels)
{
    Scenario s;
    s.name = std::move(name);
    s.graph = build_dense_graph(node_count, edges);
    s.partition = CategoryPartition::from_node_labels(node_labels, irrelevant_labels);
    return s;
}

} // namespace

Scenario gen_two_community(const ScenarioSpec& spec, std::uint64_t seed)
{
    spec.validate();
    const std::size_t n_tiny = scaled(spec.tiny_size, spec.scale);
    const std::size_t n_big = scaled(spec.big_size, spec.scale);
    const std::size_t e_tiny = scaled(spec.tiny_edges, spec.scale);
    const std::size_t e_big = scaled(spec.big_edges, spec.scale);
    const std::size_t e_inter = scaled(spec.inter_edges, spec.scale);
    if (static_cast<double>(e_inter) > static_cast<double>(n_tiny) * static_cast<double>(n_big)) {
        throw Error("infeasible inter-community edge count");
    }
    const std::size_t N = n_tiny + n_big;
    // Irrelevant block: big-community density, joined by uniform cross edges.
    const std::size_t n_irr = scaled(N, spec.irrelevant_factor);
    const std::size_t e_irr = n_irr ? scaled(spec.big_edges, static_cast<double>(n_irr) / static_cast<double>(spec.big_size)) : 0;
    const std::size_t e_cross = n_irr ? std::max<std::size_t>(1, scaled(n_irr, spec.irrelevant_links)) : 0;

    Rng topo(derive_seed(seed, 0x70b0));
    std::vector<Edge> edges;
    const std::size_t total = e_tiny + e_big + e_inter + e_irr + e_cross;
    edges.reserve(total);
    EdgeSet seen(total);
    wire_community(0, n_tiny, e_tiny, topo, seen, edges);
    wire_community(static_cast<NodeId>(n_tiny), n_big, e_big, topo, seen, edges);
    std::size_t inter = 0;
    while (inter < e_inter) {
        const auto a = static_cast<NodeId>(topo.index(n_tiny));
        const auto b = static_cast<NodeId>(n_tiny + topo.index(n_big));
        inter += seen.insert(a, b, edges) ? 1 : 0;
    }
    if (n_irr) {
        if (static_cast<double>(e_cross) > static_cast<double>(N) * static_cast<double>(n_irr)) {
            throw Error("infeasible irrelevant cross-edge count");
        }
        Rng block(derive_seed(seed, 0x0e1e));
        wire_community(static_cast<NodeId>(N), n_irr, e_irr, block, seen, edges);
        std::size_t cross = 0;
        while (cross < e_cross) {
            const auto a = static_cast<NodeId>(block.index(N));
            const auto b = static_cast<NodeId>(N + block.index(n_irr));
            cross += seen.insert(a, b, edges) ? 1 : 0;
        }
    }

    std::vector<std::string> labels(N + n_irr, kOtherLabel);
    Rng lab(derive_seed(seed, 0x1abe));
    if (spec.labels == LabelMode::random) {
        std::vector<NodeId> order(N);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), lab.engine());
        for (std::size_t i = 0; i < N; ++i) {
            labels[order[i]] = i < n_tiny ? "tiny" : "big";
        }
    } else {
        for (std::size_t v = 0; v < N; ++v) {
            labels[v] = v < n_tiny ? "tiny" : "big";
        }
    }

    Scenario s = finish("two_community_" + std::string(to_string(spec.labels)), N + n_irr, edges, labels,
                        {kOtherLabel});
    if (!is_connected(s.graph)) {
        throw Error("generated graph is disconnected (no inter-community edges?)");
    }
    s.tiny = s.partition.find("tiny");
    s.big = s.partition.find("big");
    return s;
}

Scenario gen_toy_a(std::size_t category_size, std::uint64_t seed)
{
    if (category_size < 2 || category_size % 2 != 0) {
        throw Error("toy_a category size must be even and >= 2");
    }
    const std::size_t N = 2 * category_size + 1;
    std::vector<std::string> labels(N);
    labels[0] = "white";
    std::vector<Edge> edges;
    std::vector<std::pair<NodeId, NodeId>> intra;
    Rng rng(seed);
    for (std::size_t c = 0; c < 2; ++c) {
        std::vector<NodeId> members(category_size);
        std::iota(members.begin(), members.end(), static_cast<NodeId>(1 + c * category_size));
        std::shuffle(members.begin(), members.end(), rng.engine());
        for (std::size_t i = 0; i < category_size; i += 2) {
            intra.emplace_back(std::min(members[i], members[i + 1]), std::max(members[i], members[i + 1]));
        }
        for (NodeId v : members) {
            labels[v] = c == 0 ? "red" : "green";
            edges.push_back({0, v, 1.0});
        }
    }
    for (auto [a, b] : intra) {
        edges.push_back({a, b, 1.0});
    }
    Scenario s = finish("toy_a", N, edges, labels, {"white"});
    s.tiny = s.partition.find("red");
    s.big = s.partition.find("green");
    for (const Edge& e : s.graph.edges()) {
        s.slots.push_back(e.u == 0 ? Slot::w2 : Slot::w1);
    }
    return s;
}

Scenario gen_toy_b(std::size_t clique_size, std::size_t tiny_size, std::size_t attachment, std::uint64_t seed)
{
    if (clique_size < 2 || tiny_size < 2) {
        throw Error("toy_b needs clique_size >= 2 and tiny_size >= 2");
    }
    if (attachment < 1 || attachment > clique_size) {
        throw Error("toy_b attachment must lie in [1, clique_size]");
    }
    const std::size_t N = clique_size + tiny_size;
    std::vector<std::string> labels(N, "big");
    std::vector<Edge> edges;
    for (NodeId a = 0; a < clique_size; ++a) {
        for (NodeId b = a + 1; b < clique_size; ++b) {
            edges.push_back({a, b, 1.0});
        }
    }
    for (auto a = static_cast<NodeId>(clique_size); a < N; ++a) {
        labels[a] = "tiny";
        for (NodeId b = a + 1; b < N; ++b) {
            edges.push_back({a, b, 1.0});
        }
    }
    Rng rng(seed);
    std::vector<NodeId> clique(clique_size);
    std::iota(clique.begin(), clique.end(), 0);
    for (auto t = static_cast<NodeId>(clique_size); t < N; ++t) {
        std::shuffle(clique.begin(), clique.end(), rng.engine());
        for (std::size_t i = 0; i < attachment; ++i) {
            edges.push_back({clique[i], t, 1.0});
        }
    }
    Scenario s = finish("toy_b", N, edges, labels, {});
    s.tiny = s.partition.find("tiny");
    s.big = s.partition.find("big");
    for (const Edge& e : s.graph.edges()) {
        const bool touches_tiny = e.u >= clique_size || e.v >= clique_size;
        s.slots.push_back(touches_tiny ? Slot::w1 : Slot::w2);
    }
    return s;
}

Scenario generate(const ScenarioSpec& spec, std::uint64_t seed)
{
    switch (spec.kind) {
    case ScenarioKind::two_community: return gen_two_community(spec, seed);
    case ScenarioKind::toy_a: return gen_toy_a(spec.category_size, seed);
    case ScenarioKind::toy_b: return gen_toy_b(spec.clique_size, spec.toy_tiny_size, spec.attachment, seed);
    }
    throw Error("unknown scenario kind");
}

WeightedGraph apply_slot_weights(const Scenario& s, double w1, double w2)
{
    if (s.slots.size() != s.graph.edge_count()) {
        throw Error("scenario has no weight slots");
    }
    std::vector<double> w;
    w.reserve(s.slots.size());
    for (Slot slot : s.slots) {
        w.push_back(slot == Slot::w1 ? w1 : slot == Slot::w2 ? w2 : 1.0);
    }
    return s.graph.with_edge_weights(std::move(w));
}

WeightedGraph weight_tiny_edges(const Scenario& s, double w)
{
    if (!s.tiny) {
        throw Error("scenario has no tiny category");
    }
    std::vector<double> weights;
    weights.reserve(s.graph.edge_count());
    for (const Edge& e : s.graph.edges()) {
        const bool touches = s.partition.category_of(e.u) == *s.tiny || s.partition.category_of(e.v) == *s.tiny;
        weights.push_back(touches ? w : 1.0);
    }
    return s.graph.with_edge_weights(std::move(weights));
}

double toy_b_wis_ratio(std::size_t clique_size, std::size_t tiny_size)
{
    const double big = static_cast<double>(clique_size) * static_cast<double>(clique_size - 1);
    const double tiny = static_cast<double>(tiny_size) * static_cast<double>(tiny_size - 1);
    return big / tiny;
}

} // namespace swrw
