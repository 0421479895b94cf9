#pragma once

#include "swrw/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swrw {

using CategoryId = std::uint32_t;

/// Label given to nodes absent from a category file.
inline constexpr const char* kOtherLabel = "__other__";

/// Partition of the nodes into labeled categories with at most one
/// irrelevant category (C-ominus).
class CategoryPartition {
public:
    CategoryPartition() = default;
    CategoryPartition(std::vector<std::string> labels, std::vector<CategoryId> category_of,
                      std::optional<CategoryId> irrelevant = std::nullopt);

    /// Categories are the distinct labels in sorted order. Every label listed in
    /// `irrelevant_labels` is merged into a single irrelevant category.
    static CategoryPartition from_node_labels(std::span<const std::string> node_labels,
                                              std::span<const std::string> irrelevant_labels = {});

    /// One category "all" covering every node.
    static CategoryPartition single(std::size_t node_count, std::string label = "all");

    std::size_t node_count() const noexcept { return category_of_.size(); }
    std::size_t category_count() const noexcept { return labels_.size(); }

    CategoryId category_of(NodeId v) const;
    std::span<const CategoryId> assignment() const noexcept { return category_of_; }

    const std::string& label(CategoryId c) const;
    std::span<const std::string> labels() const noexcept { return labels_; }
    std::optional<CategoryId> find(const std::string& label) const;

    std::optional<CategoryId> irrelevant() const noexcept { return irrelevant_; }
    bool is_irrelevant(CategoryId c) const noexcept { return irrelevant_ && *irrelevant_ == c; }
    std::size_t relevant_count() const noexcept { return labels_.size() - (irrelevant_ ? 1 : 0); }

    /// Number of nodes in category c.
    std::size_t size(CategoryId c) const;

private:
    std::vector<std::string> labels_;
    std::vector<CategoryId> category_of_;
    std::vector<std::size_t> sizes_;
    std::optional<CategoryId> irrelevant_;
};

/// Exact aggregate statistics of a node set.
struct NodeSetStats {
    std::size_t size = 0;
    std::uint64_t volume = 0;
    double weight = 0.0;
    double size_fraction = 0.0;
    double volume_fraction = 0.0;
};

NodeSetStats set_stats(const WeightedGraph& g, const CategoryPartition& p, CategoryId c);

/// Edge counts |E_{Ci,Cj}| keyed by (min, max) category pair; only nonzero entries are present.
using CategoryEdgeCounts = std::map<std::pair<CategoryId, CategoryId>, std::size_t>;

CategoryEdgeCounts category_edge_sets(const WeightedGraph& g, const CategoryPartition& p);

/// Per-node multiset of neighbor categories, stored compactly.
///
/// Self-loops count twice so that the counts at every node sum to its degree.
class NeighborCategories {
public:
    struct Entry {
        CategoryId category;
        std::uint32_t count;
    };

    NeighborCategories(const WeightedGraph& g, const CategoryPartition& p);

    std::span<const Entry> at(NodeId v) const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Entry> entries_;
};

} // namespace swrw
