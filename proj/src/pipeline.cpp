#include "swrw/pipeline.hpp"

#include "swrw/error.hpp"
#include "swrw/estimation.hpp"
#include "swrw/rng.hpp"

#include <algorithm>
#include <cmath>

namespace swrw {

std::string_view to_string(ConflictRule r) noexcept
{
    switch (r) {
    case ConflictRule::arithmetic: return "arithmetic";
    case ConflictRule::geometric: return "geometric";
    case ConflictRule::max: return "max";
    case ConflictRule::hybrid: return "hybrid";
    }
    return "unknown";
}

ConflictRule parse_conflict_rule(std::string_view name)
{
    for (ConflictRule r : {ConflictRule::arithmetic, ConflictRule::geometric, ConflictRule::max, ConflictRule::hybrid}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    throw Error("unknown conflict rule '" + std::string(name) + "'");
}

void SwrwConfig::validate() const
{
    if (!(f_irrelevant >= 0.0 && f_irrelevant < 1.0)) {
        throw Error("f_irrelevant must lie in [0, 1)");
    }
    if (!(gamma >= 1.0)) {
        throw Error("gamma must be >= 1");
    }
    if (pilot_length && *pilot_length == 0) {
        throw Error("pilot length must be >= 1");
    }
    if (!pilot_length && !(pilot_fraction > 0.0)) {
        throw Error("pilot fraction must be positive");
    }
}

std::size_t SwrwConfig::pilot_for(std::size_t main_length) const
{
    if (pilot_length) {
        return *pilot_length;
    }
    const auto len = static_cast<std::size_t>(std::llround(pilot_fraction * static_cast<double>(main_length)));
    return std::max<std::size_t>(1, len);
}

std::vector<double> pilot_volumes(const CrawlContext& ctx, std::size_t pilot_length, std::uint64_t seed,
                                  WalkSample* pilot_out)
{
    WalkOptions opts;
    opts.n = pilot_length;
    opts.seed = seed;
    WalkSample pilot = rw(ctx, opts);
    auto volumes = volume_fraction_star(pilot, VolumeForm::rw);
    if (pilot_out != nullptr) {
        *pilot_out = std::move(pilot);
    }
    return volumes;
}

std::vector<double> category_wis_weights(const AllocationPlan& plan, std::optional<CategoryId> irrelevant)
{
    std::vector<double> w = plan.weight;
    if (irrelevant && *irrelevant < w.size()) {
        w[*irrelevant] = 0.0;
    }
    return w;
}

std::vector<double> inject_irrelevant_mass(std::span<const double> weights, std::optional<CategoryId> irrelevant,
                                           double f_irrelevant, bool* warned)
{
    if (!(f_irrelevant >= 0.0 && f_irrelevant < 1.0)) {
        throw Error("f_irrelevant must lie in [0, 1)");
    }
    std::vector<double> out(weights.begin(), weights.end());
    if (warned != nullptr) {
        *warned = false;
    }
    if (!irrelevant) {
        if (warned != nullptr && f_irrelevant > 0.0) {
            *warned = true;
        }
        return out;
    }
    if (*irrelevant >= out.size()) {
        throw Error("irrelevant category out of range");
    }
    double relevant = 0.0;
    for (std::size_t c = 0; c < out.size(); ++c) {
        relevant += c == *irrelevant ? 0.0 : out[c];
    }
    out[*irrelevant] = f_irrelevant * relevant;
    return out;
}

ClampedVolumes clamp_volumes(std::span<const double> estimates, double gamma, std::optional<CategoryId> irrelevant)
{
    if (!(gamma >= 1.0)) {
        throw Error("gamma must be >= 1");
    }
    double largest = 0.0;
    for (std::size_t c = 0; c < estimates.size(); ++c) {
        if (!(irrelevant && *irrelevant == c)) {
            largest = std::max(largest, estimates[c]);
        }
    }
    if (!(largest > 0.0)) {
        throw PilotError("no relevant category has a positive volume estimate (pilot too short)");
    }
    ClampedVolumes out;
    out.vol_min = largest / gamma;
    out.volumes.reserve(estimates.size());
    for (double v : estimates) {
        out.volumes.push_back(std::max(v, out.vol_min));
    }
    return out;
}

std::vector<double> target_edge_weights(std::span<const double> w_tilde, std::span<const double> vol_tilde)
{
    if (w_tilde.size() != vol_tilde.size()) {
        throw Error("weights and volumes differ in length");
    }
    std::vector<double> out;
    out.reserve(w_tilde.size());
    for (std::size_t c = 0; c < w_tilde.size(); ++c) {
        if (!(vol_tilde[c] > 0.0)) {
            throw Error("clamped volume of category " + std::to_string(c) + " is not positive");
        }
        out.push_back(w_tilde[c] / vol_tilde[c]);
    }
    return out;
}

double resolve_edge(double a, double b, bool touches_irrelevant, ConflictRule rule)
{
    switch (rule) {
    case ConflictRule::arithmetic: return 0.5 * (a + b);
    case ConflictRule::geometric: return std::sqrt(a * b);
    case ConflictRule::max: return std::max(a, b);
    case ConflictRule::hybrid: return touches_irrelevant ? std::sqrt(a * b) : std::max(a, b);
    }
    throw Error("unknown conflict rule");
}

WeightedGraph resolve_conflicts(const WeightedGraph& g, const CategoryPartition& p, std::span<const double> targets,
                                ConflictRule rule)
{
    if (p.node_count() != g.node_count()) {
        throw Error("partition does not match graph");
    }
    if (targets.size() != p.category_count()) {
        throw Error("need one target edge weight per category");
    }
    std::vector<double> weights;
    weights.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        const CategoryId cu = p.category_of(e.u);
        const CategoryId cv = p.category_of(e.v);
        if (cu == cv) {
            weights.push_back(targets[cu]);
        } else {
            weights.push_back(
                resolve_edge(targets[cu], targets[cv], p.is_irrelevant(cu) || p.is_irrelevant(cv), rule));
        }
    }
    return g.with_edge_weights(std::move(weights));
}

EdgeWeightPlan plan_edge_weights(const CategoryPartition& p, const SwrwConfig& config, std::vector<double> vol_hat)
{
    config.validate();
    const std::size_t k = p.category_count();
    if (vol_hat.size() != k) {
        throw Error("need one volume estimate per category");
    }
    if (!config.sigmas.empty() && config.sigmas.size() != k) {
        throw Error("need one sigma per category");
    }
    if (!config.category_sizes.empty() && config.category_sizes.size() != k) {
        throw Error("need one size per category");
    }
    EdgeWeightPlan plan;
    plan.labels.assign(p.labels().begin(), p.labels().end());
    plan.irrelevant = p.irrelevant();
    plan.conflict = config.conflict;

    auto clamped = clamp_volumes(vol_hat, config.gamma, p.irrelevant());
    plan.vol_hat = std::move(vol_hat);
    plan.vol_tilde = std::move(clamped.volumes);
    plan.vol_min = clamped.vol_min;

    StratumSpec spec;
    spec.budget = 1.0;
    for (CategoryId c = 0; c < k; ++c) {
        Stratum s;
        s.label = p.label(c);
        s.size = config.category_sizes.empty() ? plan.vol_tilde[c] : config.category_sizes[c];
        if (!config.sigmas.empty()) {
            s.sigma = config.sigmas[c];
        }
        s.relevant = !p.is_irrelevant(c);
        spec.strata.push_back(std::move(s));
    }
    plan.w_wis = category_wis_weights(allocate(spec, config.objective), p.irrelevant());

    bool warned = false;
    plan.w_tilde = inject_irrelevant_mass(plan.w_wis, p.irrelevant(), config.f_irrelevant, &warned);
    if (warned) {
        plan.warnings.emplace_back("f_irrelevant > 0 but the partition has no irrelevant category; ignored");
    }
    plan.w_edge = target_edge_weights(plan.w_tilde, plan.vol_tilde);
    return plan;
}

SwrwResult run_swrw(const CrawlContext& ctx, const SwrwConfig& config, std::size_t n, std::uint64_t seed)
{
    config.validate();
    if (n == 0) {
        throw Error("sample size must be at least 1");
    }
    SwrwResult result;
    auto vol_hat = pilot_volumes(ctx, config.pilot_for(n), derive_seed(seed, 1), &result.pilot);
    result.plan = plan_edge_weights(ctx.partition(), config, std::move(vol_hat));

    const CrawlContext weighted = ctx.with_graph(
        resolve_conflicts(ctx.graph(), ctx.partition(), result.plan.w_edge, result.plan.conflict));
    WalkOptions opts;
    opts.n = n;
    opts.seed = derive_seed(seed, 2);
    opts.start = result.pilot.visits.back().node;
    result.sample = wrw(weighted, opts);
    result.sample.sampler = Sampler::swrw;
    result.sample.seed = seed;

    const auto& p = ctx.partition();
    std::vector<char> seen(p.category_count(), 0);
    for (const Visit& v : result.sample.visits) {
        seen[v.category] = 1;
    }
    std::size_t visited = 0;
    for (CategoryId c = 0; c < p.category_count(); ++c) {
        visited += (!p.is_irrelevant(c) && seen[c]) ? 1 : 0;
    }
    result.category_coverage =
        p.relevant_count() ? static_cast<double>(visited) / static_cast<double>(p.relevant_count()) : 0.0;
    result.confined = visited < p.relevant_count();
    return result;
}

WeightedGraph arbitrary_node_weights(const WeightedGraph& g, std::span<const double> targets)
{
    const std::size_t N = g.node_count();
    if (targets.size() != N) {
        throw Error("need one target weight per node");
    }
    if (N == 0) {
        throw Error("empty graph");
    }
    for (NodeId v = 0; v < N; ++v) {
        if (!(targets[v] > 0.0) || !std::isfinite(targets[v])) {
            throw Error("target node weights must be positive and finite");
        }
        if (!g.has_self_loop(v)) {
            throw Error("node " + std::to_string(g.original_id(v)) + " has no self-loop");
        }
    }
    const double w_min = *std::min_element(targets.begin(), targets.end());
    const double link = w_min / static_cast<double>(N);
    std::vector<double> weights;
    weights.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) {
            weights.push_back(0.5 * (targets[e.u] - link * (static_cast<double>(g.degree(e.u)) - 2.0)));
        } else {
            weights.push_back(link);
        }
    }
    return g.with_edge_weights(std::move(weights));
}

} // namespace swrw
