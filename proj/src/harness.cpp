#include "swrw/harness.hpp"

#include "swrw/error.hpp"
#include "swrw/estimation.hpp"
#include "swrw/io.hpp"
#include "swrw/parallel.hpp"
#include "swrw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace swrw {

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::uis: return "uis";
    case Method::wis: return "wis";
    case Method::rw: return "rw";
    case Method::mhrw: return "mhrw";
    case Method::wrw: return "wrw";
    case Method::swrw: return "swrw";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : {Method::uis, Method::wis, Method::rw, Method::mhrw, Method::wrw, Method::swrw}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw Error("unknown method '" + std::string(name) + "'");
}

double relevant_fraction(const WalkSample& s, CategoryId target)
{
    double num = 0.0;
    double den = 0.0;
    for (const Visit& v : s.visits) {
        if (s.irrelevant && v.category == *s.irrelevant) {
            continue;
        }
        if (!(v.weight > 0.0)) {
            detail::throw_zero_weight(v);
        }
        den += 1.0 / v.weight;
        num += v.category == target ? 1.0 / v.weight : 0.0;
    }
    return den > 0.0 ? num / den : 0.0;
}

double tiny_truth(const Scenario& s)
{
    if (!s.tiny) {
        throw Error("scenario has no target category");
    }
    const auto& p = s.partition;
    const double relevant = static_cast<double>(p.node_count()) -
                            (p.irrelevant() ? static_cast<double>(p.size(*p.irrelevant())) : 0.0);
    return static_cast<double>(p.size(*s.tiny)) / relevant;
}

namespace {

struct RunOutcome {
    double estimate = 0.0;
    double cost = 0.0;
    bool visited = false;
    bool stuck = false;
};

// Everything shared by the replications of one method.
struct MethodRunner {
    const Scenario* scenario;
    MethodSpec spec;
    CrawlContext ctx;
    std::optional<CrawlContext> weighted;
    std::vector<double> z;

    MethodRunner(const Scenario& s, const MethodSpec& m)
        : scenario(&s), spec(m), ctx(s.graph, s.partition)
    {
        if (!s.tiny) {
            throw Error("scenario has no target category");
        }
        if (m.method == Method::wis) {
            z.assign(s.graph.node_count(), 1.0);
            for (NodeId v = 0; v < s.graph.node_count(); ++v) {
                z[v] = s.partition.category_of(v) == *s.tiny ? m.param : 1.0;
            }
        } else if (m.method == Method::wrw) {
            weighted = ctx.with_graph(weight_tiny_edges(s, m.param));
        } else if (m.method == Method::swrw) {
            spec.swrw.gamma = m.param;
            spec.swrw.validate();
        }
    }

    RunOutcome run(std::size_t n, std::uint64_t seed) const
    {
        RunOutcome out;
        WalkOptions opts;
        opts.n = n;
        opts.seed = seed;
        opts.record_neighbors = false;
        try {
            WalkSample sample;
            out.cost = static_cast<double>(n);
            switch (spec.method) {
            case Method::uis: sample = uis(ctx, n, seed, false); break;
            case Method::wis: sample = wis(ctx, z, n, seed, false); break;
            case Method::rw: sample = rw(ctx, opts); break;
            case Method::mhrw: sample = mhrw(ctx, opts); break;
            case Method::wrw: sample = wrw(*weighted, opts); break;
            case Method::swrw: {
                out.cost = static_cast<double>(n + spec.swrw.pilot_for(n));
                auto r = run_swrw(ctx, spec.swrw, n, seed);
                out.cost = static_cast<double>(r.cost());
                sample = std::move(r.sample);
                break;
            }
            }
            const CategoryId tiny = *scenario->tiny;
            out.estimate = relevant_fraction(sample, tiny);
            out.visited = std::any_of(sample.visits.begin(), sample.visits.end(),
                                      [&](const Visit& v) { return v.category == tiny; });
        } catch (const StuckError&) {
            out.stuck = true;
        } catch (const PilotError&) {
            out.stuck = true;
        }
        return out;
    }
};

std::uint64_t cell_seed(std::uint64_t master, std::size_t n, std::size_t rep)
{
    return derive_seed(derive_seed(master, n), rep);
}

// NRMSE with a delta-method standard error from the squared errors.
CurvePoint summarize(const std::vector<RunOutcome>& runs, double truth, bool exclude_stuck)
{
    CurvePoint pt;
    pt.reps = runs.size();
    std::vector<double> sq;
    std::size_t visited = 0;
    std::size_t ok = 0;
    double cost = 0.0;
    for (const auto& r : runs) {
        cost += r.cost;
        if (r.stuck) {
            ++pt.stuck;
            continue;
        }
        ++ok;
        visited += r.visited ? 1 : 0;
        sq.push_back((r.estimate - truth) * (r.estimate - truth));
    }
    pt.cost = runs.empty() ? 0.0 : cost / static_cast<double>(runs.size());
    pt.p_visited = ok ? static_cast<double>(visited) / static_cast<double>(ok) : 0.0;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if ((pt.stuck > 0 && !exclude_stuck) || sq.empty()) {
        pt.nrmse = nan;
        pt.stderr_nrmse = nan;
        pt.low_confidence = true;
        return pt;
    }
    const double R = static_cast<double>(sq.size());
    const double mse = std::accumulate(sq.begin(), sq.end(), 0.0) / R;
    pt.nrmse = std::sqrt(mse) / std::abs(truth);
    pt.low_confidence = sq.size() < 2;
    if (sq.size() < 2) {
        pt.stderr_nrmse = nan;
    } else if (mse == 0.0) {
        pt.stderr_nrmse = 0.0;
    } else {
        double var = 0.0;
        for (double e : sq) {
            var += (e - mse) * (e - mse);
        }
        var /= R - 1.0;
        pt.stderr_nrmse = std::sqrt(var / R) / (2.0 * std::sqrt(mse) * std::abs(truth));
    }
    return pt;
}

} // namespace

std::vector<CurvePoint> run_replications(const Scenario& scenario, const MethodSpec& method,
                                         std::span<const std::size_t> n_grid, std::size_t reps,
                                         std::uint64_t master_seed, bool exclude_stuck)
{
    if (reps == 0) {
        throw Error("need at least one replication");
    }
    const MethodRunner runner(scenario, method);
    const double truth = tiny_truth(scenario);
    std::vector<CurvePoint> out;
    for (std::size_t n : n_grid) {
        std::vector<RunOutcome> runs(reps);
        parallel_for(reps, [&](std::size_t r) { runs[r] = runner.run(n, cell_seed(master_seed, n, r)); });
        CurvePoint pt = summarize(runs, truth, exclude_stuck);
        pt.scenario = scenario.name;
        pt.method = std::string(to_string(method.method));
        pt.param = method.method == Method::swrw ? runner.spec.swrw.gamma : method.param;
        pt.n = n;
        out.push_back(std::move(pt));
    }
    return out;
}

WeightSweep error_vs_weight_sweep(const Scenario& scenario, MethodSpec method, std::span<const double> w_grid,
                                  std::size_t n, std::size_t reps, std::uint64_t master_seed)
{
    if (method.method != Method::wis && method.method != Method::wrw && method.method != Method::swrw) {
        throw Error("weight sweeps need wis, wrw or swrw");
    }
    WeightSweep sweep;
    const std::size_t grid[] = {n};
    double best = std::numeric_limits<double>::infinity();
    for (double w : w_grid) {
        method.param = w;
        auto pts = run_replications(scenario, method, grid, reps, master_seed);
        if (std::isfinite(pts.front().nrmse) && pts.front().nrmse < best) {
            best = pts.front().nrmse;
            sweep.argmin = w;
        }
        sweep.points.push_back(std::move(pts.front()));
    }
    return sweep;
}

std::vector<GainRow> measure_gain(std::span<const CurvePoint> opt, std::span<const CurvePoint> baseline)
{
    std::vector<const CurvePoint*> base;
    for (const auto& b : baseline) {
        if (std::isfinite(b.nrmse)) {
            base.push_back(&b);
        }
    }
    std::sort(base.begin(), base.end(), [](auto* a, auto* b) { return a->cost < b->cost; });
    std::vector<GainRow> rows;
    for (const auto& o : opt) {
        GainRow row;
        row.scenario = o.scenario;
        row.method = o.method;
        row.param = o.param;
        row.baseline = baseline.empty() ? std::string() : baseline.front().method;
        row.n_opt = o.n;
        row.cost_opt = o.cost;
        row.nrmse = o.nrmse;
        const double t = o.nrmse;
        if (!std::isfinite(t) || base.empty()) {
            row.status = "no_estimate";
            rows.push_back(std::move(row));
            continue;
        }
        auto exact = std::find_if(base.begin(), base.end(), [&](auto* b) { return b->nrmse == t; });
        if (exact != base.end()) {
            row.cost_base = (*exact)->cost;
        } else {
            for (std::size_t i = 0; i + 1 < base.size(); ++i) {
                const double e0 = base[i]->nrmse;
                const double e1 = base[i + 1]->nrmse;
                if (e0 >= t && t >= e1) {
                    const double c0 = std::log(base[i]->cost);
                    const double c1 = std::log(base[i + 1]->cost);
                    if (e0 == e1 || e1 <= 0.0) {
                        row.cost_base = base[i]->cost;
                    } else {
                        const double s = (std::log(t) - std::log(e0)) / (std::log(e1) - std::log(e0));
                        row.cost_base = std::exp(c0 + s * (c1 - c0));
                    }
                    break;
                }
            }
        }
        if (row.cost_base) {
            row.alpha = *row.cost_base / o.cost;
            row.status = "ok";
        } else {
            const bool never = std::all_of(base.begin(), base.end(), [&](auto* b) { return b->nrmse > t; });
            row.status = never ? "not_reached" : "below_grid";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<double> mean_gain(std::span<const GainRow> rows)
{
    double log_sum = 0.0;
    std::size_t k = 0;
    for (const auto& r : rows) {
        if (r.alpha && *r.alpha > 0.0) {
            log_sum += std::log(*r.alpha);
            ++k;
        }
    }
    if (k == 0) {
        return std::nullopt;
    }
    return std::exp(log_sum / static_cast<double>(k));
}

std::vector<CurvePoint> volume_estimator_curves(const Scenario& scenario, std::span<const std::size_t> lengths,
                                                std::size_t reps, std::uint64_t master_seed)
{
    if (!scenario.tiny || reps == 0) {
        throw Error("volume curves need a target category and at least one replication");
    }
    const CrawlContext ctx(scenario.graph, scenario.partition);
    const CategoryId tiny = *scenario.tiny;
    const double truth = set_stats(scenario.graph, scenario.partition, tiny).volume_fraction;
    std::vector<CurvePoint> out;
    for (std::size_t n : lengths) {
        std::vector<RunOutcome> node(reps);
        std::vector<RunOutcome> star(reps);
        parallel_for(reps, [&](std::size_t r) {
            WalkOptions opts;
            opts.n = n;
            opts.seed = cell_seed(master_seed, n, r);
            const WalkSample s = rw(ctx, opts);
            node[r].estimate = volume_fraction_node(s, VolumeForm::rw)[tiny];
            star[r].estimate = volume_fraction_star(s, VolumeForm::rw)[tiny];
            node[r].cost = star[r].cost = static_cast<double>(n);
            node[r].visited = star[r].visited = std::any_of(s.visits.begin(), s.visits.end(),
                                                            [&](const Visit& v) { return v.category == tiny; });
        });
        for (auto [name, runs] : {std::pair{"vol_node", &node}, std::pair{"vol_star", &star}}) {
            CurvePoint pt = summarize(*runs, truth, false);
            pt.scenario = scenario.name;
            pt.method = name;
            pt.n = n;
            out.push_back(std::move(pt));
        }
    }
    return out;
}

ToyAMoments toy_a_analytic(double p, double n_wh)
{
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error("p must lie in (0, 1]; at p = 0 the walk never enters the relevant categories");
    }
    if (!(n_wh >= 1.0)) {
        throw Error("n_wh must be at least 1");
    }
    return {0.5, (3.0 - 2.0 * p) / (4.0 * n_wh)};
}

namespace {

// Walks toy_a from the hub; calls sojourn(category, length) once per excursion.
template <class OnSojourn>
void toy_a_excursions(const Scenario& toy, const TransitionTable& table, std::size_t count, Rng& rng,
                      OnSojourn&& sojourn)
{
    Walker walker(table, 0, rng);
    for (std::size_t i = 0; i < count; ++i) {
        NodeId v = walker.step();
        const CategoryId c = toy.partition.category_of(v);
        std::size_t len = 0;
        while (v != 0) {
            ++len;
            v = walker.step();
        }
        sojourn(c, len);
    }
}

} // namespace

ToyAMoments toy_a_monte_carlo(double p, std::size_t n_wh, std::size_t reps, std::uint64_t seed,
                              std::size_t category_size)
{
    toy_a_analytic(p, static_cast<double>(n_wh));
    if (reps < 2) {
        throw Error("need at least two replications");
    }
    const Scenario toy = gen_toy_a(category_size, seed);
    const WeightedGraph g = apply_slot_weights(toy, 1.0 - p, p);
    const TransitionTable table = TransitionTable::weighted(g);
    const CategoryId red = *toy.tiny;
    std::vector<double> est(reps);
    parallel_for(reps, [&](std::size_t r) {
        Rng rng(derive_seed(seed, r + 1));
        std::size_t n_red = 0;
        toy_a_excursions(toy, table, n_wh, rng, [&](CategoryId c, std::size_t len) {
            n_red += c == red ? len : 0;
        });
        est[r] = static_cast<double>(n_red) * p / static_cast<double>(n_wh);
    });
    const double R = static_cast<double>(reps);
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / R;
    double var = 0.0;
    for (double e : est) {
        var += (e - mean) * (e - mean);
    }
    return {mean, var / (R - 1.0)};
}

std::vector<std::size_t> toy_a_dwell_times(double p, std::size_t count, std::uint64_t seed, std::size_t category_size)
{
    toy_a_analytic(p, 1.0);
    const Scenario toy = gen_toy_a(category_size, seed);
    const WeightedGraph g = apply_slot_weights(toy, 1.0 - p, p);
    const TransitionTable table = TransitionTable::weighted(g);
    Rng rng(derive_seed(seed, 0));
    std::vector<std::size_t> out;
    out.reserve(count);
    toy_a_excursions(toy, table, count, rng, [&](CategoryId, std::size_t len) { out.push_back(len); });
    return out;
}

namespace {

template <class T>
std::string join(const std::vector<T>& xs)
{
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            s += ',';
        }
        if constexpr (std::is_floating_point_v<T>) {
            s += format_double(xs[i]);
        } else {
            s += std::to_string(xs[i]);
        }
    }
    return s + "]";
}

void append(std::vector<CurvePoint>& to, std::vector<CurvePoint> from)
{
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

void append(std::vector<GainRow>& to, std::vector<GainRow> from)
{
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

} // namespace

std::vector<std::pair<std::string, std::string>> manifest_entries(const ExperimentConfig& c)
{
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("preset", c.preset);
    m.emplace_back("seed", std::to_string(c.seed));
    m.emplace_back("scenario", std::string(to_string(c.scenario.kind)));
    m.emplace_back("scale", format_double(c.scenario.scale));
    m.emplace_back("labels", std::string(to_string(c.scenario.labels)));
    m.emplace_back("irrelevant-factor", format_double(c.scenario.irrelevant_factor));
    m.emplace_back("irrelevant-links", format_double(c.scenario.irrelevant_links));
    m.emplace_back("category-size", std::to_string(c.scenario.category_size));
    m.emplace_back("clique-size", std::to_string(c.scenario.clique_size));
    m.emplace_back("tiny-size", std::to_string(c.scenario.toy_tiny_size));
    m.emplace_back("attachment", std::to_string(c.scenario.attachment));
    m.emplace_back("reps", std::to_string(c.reps));
    m.emplace_back("n", join(c.n_grid));
    m.emplace_back("w-grid", join(c.w_grid));
    m.emplace_back("gamma", format_double(c.swrw.gamma));
    m.emplace_back("f-irrelevant", format_double(c.swrw.f_irrelevant));
    m.emplace_back("conflict", std::string(to_string(c.swrw.conflict)));
    m.emplace_back("objective", std::string(to_string(c.swrw.objective)));
    if (c.swrw.pilot_length) {
        m.emplace_back("pilot-len", std::to_string(*c.swrw.pilot_length));
    }
    m.emplace_back("pilot-fraction", format_double(c.swrw.pilot_fraction));
    m.emplace_back("exclude-stuck", c.exclude_stuck ? "true" : "false");
    return m;
}

ExperimentReport run_experiment(const ExperimentConfig& c)
{
    if (c.n_grid.empty()) {
        throw Error("n grid is empty");
    }
    if (c.reps == 0) {
        throw Error("reps must be at least 1");
    }
    const Scenario scenario = generate(c.scenario, c.seed);
    const std::uint64_t walk_seed = derive_seed(c.seed, 0x5eed);
    ExperimentReport report;
    report.manifest = manifest_entries(c);

    auto method = [&](Method m, double param) {
        MethodSpec spec;
        spec.method = m;
        spec.param = param;
        spec.swrw = c.swrw;
        return spec;
    };
    auto curve = [&](Method m, double param) {
        return run_replications(scenario, method(m, param), c.n_grid, c.reps, walk_seed, c.exclude_stuck);
    };

    if (c.preset == "figure5") {
        auto base = curve(Method::rw, 1.0);
        append(report.curves, base);
        for (double w : c.w_grid) {
            append(report.curves, curve(Method::wrw, w));
        }
        for (double g : c.w_grid) {
            if (g < 1.0) {
                continue;
            }
            auto s = curve(Method::swrw, g);
            append(report.gains, measure_gain(s, base));
            append(report.curves, std::move(s));
        }
    } else if (c.preset == "gain") {
        auto uis_curve = curve(Method::uis, 1.0);
        auto rw_curve = curve(Method::rw, 1.0);
        append(report.curves, uis_curve);
        append(report.curves, rw_curve);
        for (double w : c.w_grid) {
            auto wis_curve = curve(Method::wis, w);
            auto wrw_curve = curve(Method::wrw, w);
            append(report.gains, measure_gain(wis_curve, uis_curve));
            append(report.gains, measure_gain(wrw_curve, rw_curve));
            append(report.curves, std::move(wis_curve));
            append(report.curves, std::move(wrw_curve));
        }
        auto s = curve(Method::swrw, c.swrw.gamma);
        append(report.gains, measure_gain(s, rw_curve));
        append(report.curves, std::move(s));
    } else if (c.preset == "sweep") {
        for (Method m : {Method::wis, Method::wrw}) {
            auto sweep = error_vs_weight_sweep(scenario, method(m, 1.0), c.w_grid, c.n_grid.front(), c.reps,
                                               walk_seed);
            append(report.curves, std::move(sweep.points));
        }
    } else if (c.preset == "volumes") {
        append(report.curves, volume_estimator_curves(scenario, c.n_grid, c.reps, walk_seed));
    } else {
        throw Error("unknown preset '" + c.preset + "' (figure5, gain, sweep, volumes)");
    }
    return report;
}

namespace {

std::string num(double x) { return std::isfinite(x) ? format_double(x) : "nan"; }

} // namespace

void write_report(const ExperimentReport& report, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    {
        auto out = open_output(dir / "curves.csv");
        out << "scenario,method,param,n,nrmse,stderr\n";
        for (const auto& p : report.curves) {
            out << p.scenario << ',' << p.method << ',' << num(p.param) << ',' << p.n << ',' << num(p.nrmse) << ','
                << num(p.stderr_nrmse) << '\n';
        }
    }
    {
        auto out = open_output(dir / "visits.csv");
        out << "scenario,method,param,n,cost,reps,p_visited,stuck,low_confidence\n";
        for (const auto& p : report.curves) {
            out << p.scenario << ',' << p.method << ',' << num(p.param) << ',' << p.n << ',' << num(p.cost) << ','
                << p.reps << ',' << num(p.p_visited) << ',' << p.stuck << ',' << (p.low_confidence ? 1 : 0) << '\n';
        }
    }
    {
        auto out = open_output(dir / "gains.csv");
        out << "scenario,method,param,baseline,n_opt,cost_opt,nrmse,cost_base,alpha,status\n";
        for (const auto& g : report.gains) {
            out << g.scenario << ',' << g.method << ',' << num(g.param) << ',' << g.baseline << ',' << g.n_opt << ','
                << num(g.cost_opt) << ',' << num(g.nrmse) << ',' << (g.cost_base ? num(*g.cost_base) : "") << ','
                << (g.alpha ? num(*g.alpha) : "") << ',' << g.status << '\n';
        }
    }
    {
        auto out = open_output(dir / "manifest.txt");
        for (const auto& [k, v] : report.manifest) {
            out << k << '=' << v << '\n';
        }
    }
}

} // namespace swrw
