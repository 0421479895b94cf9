#include "swrw/partition.hpp"

#include "swrw/error.hpp"

#include <algorithm>

namespace swrw {

CategoryPartition::CategoryPartition(std::vector<std::string> labels, std::vector<CategoryId> category_of,
                                     std::optional<CategoryId> irrelevant)
    : labels_(std::move(labels)), category_of_(std::move(category_of)), irrelevant_(irrelevant)
{
    if (irrelevant_ && *irrelevant_ >= labels_.size()) {
        throw Error("irrelevant category id out of range");
    }
    sizes_.assign(labels_.size(), 0);
    for (CategoryId c : category_of_) {
        if (c >= labels_.size()) {
            throw Error("category id " + std::to_string(c) + " out of range");
        }
        ++sizes_[c];
    }
    std::vector<std::string> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("duplicate category label");
    }
}

CategoryPartition CategoryPartition::from_node_labels(std::span<const std::string> node_labels,
                                                      std::span<const std::string> irrelevant_labels)
{
    auto irrelevant = [&](const std::string& l) {
        return std::find(irrelevant_labels.begin(), irrelevant_labels.end(), l) != irrelevant_labels.end();
    };
    std::vector<std::string> present_irrelevant;
    std::vector<std::string> labels;
    for (const std::string& l : node_labels) {
        (irrelevant(l) ? present_irrelevant : labels).push_back(l);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::sort(present_irrelevant.begin(), present_irrelevant.end());
    present_irrelevant.erase(std::unique(present_irrelevant.begin(), present_irrelevant.end()),
                             present_irrelevant.end());

    std::optional<CategoryId> irr;
    if (!present_irrelevant.empty()) {
        std::string merged = present_irrelevant.size() == 1 ? present_irrelevant.front() : "__irrelevant__";
        if (std::binary_search(labels.begin(), labels.end(), merged)) {
            throw Error("merged irrelevant label collides with a relevant label: " + merged);
        }
        irr = static_cast<CategoryId>(labels.size());
        labels.push_back(std::move(merged));
    }
    const std::size_t relevant = irr ? *irr : labels.size();
    std::vector<CategoryId> assignment;
    assignment.reserve(node_labels.size());
    for (const std::string& l : node_labels) {
        if (irr && irrelevant(l)) {
            assignment.push_back(*irr);
        } else {
            auto it = std::lower_bound(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(relevant), l);
            assignment.push_back(static_cast<CategoryId>(it - labels.begin()));
        }
    }
    return CategoryPartition(std::move(labels), std::move(assignment), irr);
}

CategoryPartition CategoryPartition::single(std::size_t node_count, std::string label)
{
    return CategoryPartition({std::move(label)}, std::vector<CategoryId>(node_count, 0));
}

CategoryId CategoryPartition::category_of(NodeId v) const
{
    if (v >= category_of_.size()) {
        throw Error("unknown node " + std::to_string(v));
    }
    return category_of_[v];
}

const std::string& CategoryPartition::label(CategoryId c) const
{
    if (c >= labels_.size()) {
        throw Error("unknown category " + std::to_string(c));
    }
    return labels_[c];
}

std::optional<CategoryId> CategoryPartition::find(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<CategoryId>(it - labels_.begin());
}

std::size_t CategoryPartition::size(CategoryId c) const
{
    if (c >= sizes_.size()) {
        throw Error("unknown category " + std::to_string(c));
    }
    return sizes_[c];
}

NodeSetStats set_stats(const WeightedGraph& g, const CategoryPartition& p, CategoryId c)
{
    if (p.node_count() != g.node_count()) {
        throw Error("partition does not match graph");
    }
    if (c >= p.category_count()) {
        throw Error("unknown category " + std::to_string(c));
    }
    NodeSetStats s;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (p.category_of(v) == c) {
            s.size += 1;
            s.volume += g.degree(v);
            s.weight += g.node_weight(v);
        }
    }
    s.size_fraction = g.node_count() ? static_cast<double>(s.size) / static_cast<double>(g.node_count()) : 0.0;
    s.volume_fraction = g.volume() ? static_cast<double>(s.volume) / static_cast<double>(g.volume()) : 0.0;
    return s;
}

CategoryEdgeCounts category_edge_sets(const WeightedGraph& g, const CategoryPartition& p)
{
    if (p.node_count() != g.node_count()) {
        throw Error("partition does not match graph");
    }
    CategoryEdgeCounts counts;
    for (const Edge& e : g.edges()) {
        CategoryId a = p.category_of(e.u);
        CategoryId b = p.category_of(e.v);
        if (a > b) {
            std::swap(a, b);
        }
        ++counts[{a, b}];
    }
    return counts;
}

NeighborCategories::NeighborCategories(const WeightedGraph& g, const CategoryPartition& p)
{
    if (p.node_count() != g.node_count()) {
        throw Error("partition does not match graph");
    }
    offsets_.assign(g.node_count() + 1, 0);
    std::vector<std::uint32_t> tally(p.category_count(), 0);
    std::vector<CategoryId> touched;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (NodeId u : g.neighbors(v)) {
            const CategoryId c = p.category_of(u);
            if (tally[c] == 0) {
                touched.push_back(c);
            }
            tally[c] += (u == v) ? 2 : 1;
        }
        std::sort(touched.begin(), touched.end());
        for (CategoryId c : touched) {
            entries_.push_back({c, tally[c]});
            tally[c] = 0;
        }
        touched.clear();
        offsets_[v + 1] = entries_.size();
    }
}

std::span<const NeighborCategories::Entry> NeighborCategories::at(NodeId v) const
{
    if (v + 1 >= offsets_.size()) {
        throw Error("unknown node " + std::to_string(v));
    }
    return {entries_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

} // namespace swrw
