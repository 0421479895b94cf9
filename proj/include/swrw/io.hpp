#pragma once

#include "swrw/graph.hpp"
#include "swrw/partition.hpp"
#include "swrw/pipeline.hpp"
#include "swrw/stratification.hpp"
#include "swrw/walk.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swrw {

/// Shortest round-trip decimal form; identical across runs and platforms.
std::string format_double(double x);

WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const WeightedGraph& g, bool with_weights = false);

/// "v label" lines keyed by original node id. Nodes absent from the file get
/// kOtherLabel; labels listed in `irrelevant` merge into the irrelevant category.
CategoryPartition read_categories(std::istream& in, const WeightedGraph& g,
                                  std::span<const std::string> irrelevant = {});
CategoryPartition read_categories(const std::filesystem::path& path, const WeightedGraph& g,
                                  std::span<const std::string> irrelevant = {});
void write_categories(std::ostream& out, const WeightedGraph& g, const CategoryPartition& p);

/// Per-node labels as generated, with irrelevant nodes under their own label.
void write_node_labels(std::ostream& out, const WeightedGraph& g, std::span<const std::string> labels);

/// Trace CSV: comment lines with sampler, seed, categories and irrelevant
/// label, then step,node,degree,category,node_weight and, when recorded,
/// a neighbors column of label:count pairs joined by ';'. Node ids are
/// original ids of `g`.
void write_trace(std::ostream& out, const WalkSample& s, const WeightedGraph& g);
WalkSample read_trace(std::istream& in);
WalkSample read_trace(const std::filesystem::path& path);

void write_plan(std::ostream& out, const EdgeWeightPlan& plan);
void write_allocation(std::ostream& out, const StratumSpec& spec, const AllocationPlan& plan);

/// Opens a file for writing or throws with the path in the message.
std::ofstream open_output(const std::filesystem::path& path);

} // namespace swrw
