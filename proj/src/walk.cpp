#include "swrw/walk.hpp"

#include "swrw/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace swrw {

std::string_view to_string(Sampler s) noexcept
{
    switch (s) {
    case Sampler::uis: return "uis";
    case Sampler::wis: return "wis";
    case Sampler::rw: return "rw";
    case Sampler::mhrw: return "mhrw";
    case Sampler::wrw: return "wrw";
    case Sampler::swrw: return "swrw";
    }
    return "unknown";
}

Sampler parse_sampler(std::string_view name)
{
    for (Sampler s : {Sampler::uis, Sampler::wis, Sampler::rw, Sampler::mhrw, Sampler::wrw, Sampler::swrw}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw Error("unknown sampler '" + std::string(name) + "'");
}

std::span<const NeighborCategories::Entry> WalkSample::neighbor_counts(const Visit& v) const
{
    if (!has_neighbor_counts) {
        throw Error("sample carries no neighbor-category counts");
    }
    return {neighbor_entries.data() + v.neighbors_begin, v.neighbors_size};
}

CrawlContext::CrawlContext(WeightedGraph graph, CategoryPartition partition)
    : CrawlContext(std::make_shared<const WeightedGraph>(std::move(graph)),
                   std::make_shared<const CategoryPartition>(std::move(partition)))
{
}

CrawlContext::CrawlContext(WeightedGraph graph)
{
    const std::size_t n = graph.node_count();
    *this = CrawlContext(std::move(graph), CategoryPartition::single(n));
}

CrawlContext::CrawlContext(std::shared_ptr<const WeightedGraph> graph,
                           std::shared_ptr<const CategoryPartition> partition)
    : graph_(std::move(graph)), partition_(std::move(partition))
{
    if (!graph_ || !partition_) {
        throw Error("crawl context needs a graph and a partition");
    }
    neighbors_ = std::make_shared<const NeighborCategories>(*graph_, *partition_);
}

CrawlContext CrawlContext::with_graph(WeightedGraph graph) const
{
    if (graph.node_count() != graph_->node_count() || graph.edge_count() != graph_->edge_count()) {
        throw Error("re-weighted graph must keep the topology");
    }
    CrawlContext out;
    out.graph_ = std::make_shared<const WeightedGraph>(std::move(graph));
    out.partition_ = partition_;
    out.neighbors_ = neighbors_;
    return out;
}

TransitionTable TransitionTable::unit(const WeightedGraph& g)
{
    TransitionTable t(g);
    t.offsets_.assign(g.node_count() + 1, 0);
    t.mass_.assign(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto nbrs = g.neighbors(v);
        double acc = 0.0;
        for (NodeId u : nbrs) {
            acc += (u == v) ? 2.0 : 1.0;
            t.cumulative_.push_back(acc);
        }
        t.mass_[v] = acc;
        t.offsets_[v + 1] = t.cumulative_.size();
    }
    return t;
}

TransitionTable TransitionTable::weighted(const WeightedGraph& g)
{
    TransitionTable t(g);
    t.offsets_.assign(g.node_count() + 1, 0);
    t.mass_.assign(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto nbrs = g.neighbors(v);
        auto ws = g.neighbor_weights(v);
        double acc = 0.0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            acc += (nbrs[i] == v) ? 2.0 * ws[i] : ws[i];
            t.cumulative_.push_back(acc);
        }
        t.mass_[v] = acc;
        t.offsets_[v + 1] = t.cumulative_.size();
    }
    return t;
}

NodeId TransitionTable::pick(NodeId v, double u) const
{
    const double total = mass_[v];
    if (!(total > 0.0)) {
        throw StuckError("node " + std::to_string(graph_->original_id(v)) + " has no outgoing mass");
    }
    const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    auto it = std::upper_bound(first, last, u * total);
    if (it == last) {
        it = std::lower_bound(first, last, *(last - 1));
    }
    return graph_->neighbors(v)[static_cast<std::size_t>(it - first)];
}

Walker::Walker(const TransitionTable& table, NodeId start, Rng& rng)
    : table_(&table), position_(start), rng_(&rng)
{
}

NodeId Walker::step()
{
    position_ = table_->pick(position_, rng_->uniform());
    return position_;
}

namespace {

class Recorder {
public:
    Recorder(const CrawlContext& ctx, Sampler sampler, std::uint64_t seed, std::size_t burn_in, std::size_t n,
             bool record_neighbors)
        : ctx_(ctx)
    {
        const auto& p = ctx.partition();
        sample_.sampler = sampler;
        sample_.seed = seed;
        sample_.burn_in = burn_in;
        sample_.category_labels.assign(p.labels().begin(), p.labels().end());
        sample_.irrelevant = p.irrelevant();
        sample_.has_neighbor_counts = record_neighbors;
        sample_.visits.reserve(n);
    }

    void record(NodeId v, double weight)
    {
        Visit visit;
        visit.node = v;
        visit.degree = ctx_.graph().degree(v);
        visit.category = ctx_.partition().category_of(v);
        visit.weight = weight;
        if (sample_.has_neighbor_counts) {
            auto counts = ctx_.neighbors().at(v);
            visit.neighbors_begin = sample_.neighbor_entries.size();
            visit.neighbors_size = static_cast<std::uint32_t>(counts.size());
            sample_.neighbor_entries.insert(sample_.neighbor_entries.end(), counts.begin(), counts.end());
        }
        sample_.visits.push_back(visit);
    }

    WalkSample take() { return std::move(sample_); }

private:
    const CrawlContext& ctx_;
    WalkSample sample_;
};

void require_sample_size(const CrawlContext& ctx, std::size_t n)
{
    if (ctx.graph().node_count() == 0) {
        throw Error("empty graph");
    }
    if (n == 0) {
        throw Error("sample size must be at least 1");
    }
}

NodeId start_node(const CrawlContext& ctx, const WalkOptions& opts, Rng& rng)
{
    if (opts.start) {
        if (*opts.start >= ctx.graph().node_count()) {
            throw Error("start node out of range");
        }
        return *opts.start;
    }
    return static_cast<NodeId>(rng.index(ctx.graph().node_count()));
}

// Shared driver for RW and WRW: both pick the next hop from a cumulative
// table with one uniform draw, so equal weights reproduce RW exactly.
WalkSample table_walk(const CrawlContext& ctx, const TransitionTable& table, const WalkOptions& opts,
                      Sampler tag)
{
    require_sample_size(ctx, opts.n);
    Rng rng(opts.seed);
    const NodeId start = start_node(ctx, opts, rng);
    if (!(table.mass(start) > 0.0)) {
        throw StuckError("start node " + std::to_string(ctx.graph().original_id(start)) + " has no outgoing mass");
    }
    Walker walker(table, start, rng);
    for (std::size_t i = 0; i < opts.burn_in; ++i) {
        walker.step();
    }
    Recorder rec(ctx, tag, opts.seed, opts.burn_in, opts.n, opts.record_neighbors);
    for (std::size_t i = 0; i < opts.n; ++i) {
        if (i > 0) {
            walker.step();
        }
        rec.record(walker.position(), table.mass(walker.position()));
    }
    return rec.take();
}

} // namespace

WalkSample uis(const CrawlContext& ctx, std::size_t n, std::uint64_t seed, bool record_neighbors)
{
    require_sample_size(ctx, n);
    Rng rng(seed);
    Recorder rec(ctx, Sampler::uis, seed, 0, n, record_neighbors);
    const std::size_t N = ctx.graph().node_count();
    for (std::size_t i = 0; i < n; ++i) {
        rec.record(static_cast<NodeId>(rng.index(N)), 1.0);
    }
    return rec.take();
}

WalkSample wis(const CrawlContext& ctx, std::span<const double> z, std::size_t n, std::uint64_t seed,
               bool record_neighbors)
{
    require_sample_size(ctx, n);
    if (z.size() != ctx.graph().node_count()) {
        throw Error("WIS weight vector has " + std::to_string(z.size()) + " entries, expected " +
                    std::to_string(ctx.graph().node_count()));
    }
    double total = 0.0;
    for (double x : z) {
        if (!std::isfinite(x) || x < 0.0) {
            throw Error("WIS weights must be finite and nonnegative");
        }
        total += x;
    }
    if (!(total > 0.0)) {
        throw Error("WIS weights are all zero");
    }
    Rng rng(seed);
    std::discrete_distribution<std::size_t> draw(z.begin(), z.end());
    Recorder rec(ctx, Sampler::wis, seed, 0, n, record_neighbors);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<NodeId>(draw(rng.engine()));
        rec.record(v, z[v]);
    }
    return rec.take();
}

WalkSample rw(const CrawlContext& ctx, const WalkOptions& opts)
{
    const auto table = TransitionTable::unit(ctx.graph());
    return table_walk(ctx, table, opts, Sampler::rw);
}

WalkSample wrw(const CrawlContext& ctx, const WalkOptions& opts)
{
    const auto table = TransitionTable::weighted(ctx.graph());
    return table_walk(ctx, table, opts, Sampler::wrw);
}

WalkSample mhrw(const CrawlContext& ctx, const WalkOptions& opts)
{
    require_sample_size(ctx, opts.n);
    const WeightedGraph& g = ctx.graph();
    const auto table = TransitionTable::unit(g);
    Rng rng(opts.seed);
    NodeId current = start_node(ctx, opts, rng);
    if (g.degree(current) == 0) {
        throw StuckError("start node " + std::to_string(g.original_id(current)) + " is isolated");
    }
    auto advance = [&] {
        const NodeId proposal = table.pick(current, rng.uniform());
        const double du = g.degree(current);
        const double dv = g.degree(proposal);
        if (dv <= du || rng.uniform() < du / dv) {
            current = proposal;
        }
    };
    for (std::size_t i = 0; i < opts.burn_in; ++i) {
        advance();
    }
    Recorder rec(ctx, Sampler::mhrw, opts.seed, opts.burn_in, opts.n, opts.record_neighbors);
    for (std::size_t i = 0; i < opts.n; ++i) {
        if (i > 0) {
            advance();
        }
        rec.record(current, 1.0);
    }
    return rec.take();
}

StationaryDistribution exact_stationary(const WeightedGraph& g, double tolerance, std::size_t max_iterations)
{
    const std::size_t n = g.node_count();
    if (n == 0 || !(g.total_weight() > 0.0)) {
        throw Error("graph has no positive edge weight");
    }

    // Nodes of positive weight must form one component, and it must not be bipartite.
    std::vector<int> color(n, -1);
    std::deque<NodeId> queue;
    NodeId seed = 0;
    while (!(g.node_weight(seed) > 0.0)) {
        ++seed;
    }
    color[seed] = 0;
    queue.push_back(seed);
    bool bipartite = true;
    std::size_t reached = 0;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        ++reached;
        auto nbrs = g.neighbors(u);
        auto ws = g.neighbor_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (!(ws[i] > 0.0)) {
                continue;
            }
            const NodeId v = nbrs[i];
            if (color[v] < 0) {
                color[v] = 1 - color[u];
                queue.push_back(v);
            } else if (color[v] == color[u]) {
                bipartite = false;
            }
        }
    }
    std::size_t positive = 0;
    for (NodeId v = 0; v < n; ++v) {
        positive += g.node_weight(v) > 0.0 ? 1 : 0;
    }
    if (reached != positive) {
        throw Error("positive-weight subgraph is disconnected");
    }
    if (bipartite) {
        throw Error("walk is periodic (bipartite positive-weight subgraph)");
    }

    StationaryDistribution out;
    std::vector<double> pi(n, 0.0);
    std::vector<double> next(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        pi[v] = g.node_weight(v) > 0.0 ? 1.0 / static_cast<double>(positive) : 0.0;
    }
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
            const double wu = g.node_weight(u);
            if (!(wu > 0.0) || pi[u] == 0.0) {
                continue;
            }
            const double share = pi[u] / wu;
            auto nbrs = g.neighbors(u);
            auto ws = g.neighbor_weights(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                next[nbrs[i]] += share * (nbrs[i] == u ? 2.0 * ws[i] : ws[i]);
            }
        }
        double residual = 0.0;
        double sum = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            sum += next[v];
        }
        for (NodeId v = 0; v < n; ++v) {
            next[v] /= sum;
            residual += std::abs(next[v] - pi[v]);
        }
        pi.swap(next);
        if (residual < tolerance) {
            out.probabilities = std::move(pi);
            out.iterations = it;
            out.residual = residual;
            return out;
        }
    }
    throw Error("power iteration did not converge (periodic or disconnected chain)");
}

std::vector<double> empirical_distribution(const WalkSample& s, std::size_t node_count)
{
    std::vector<double> freq(node_count, 0.0);
    for (const Visit& v : s.visits) {
        if (v.node >= node_count) {
            throw Error("visit outside node range");
        }
        freq[v.node] += 1.0;
    }
    if (!s.visits.empty()) {
        for (double& f : freq) {
            f /= static_cast<double>(s.visits.size());
        }
    }
    return freq;
}

double total_variation(std::span<const double> p, std::span<const double> q)
{
    if (p.size() != q.size()) {
        throw Error("distributions differ in support size");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d += std::abs(p[i] - q[i]);
    }
    return 0.5 * d;
}

} // namespace swrw
