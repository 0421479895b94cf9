// swrw: generate graphs, crawl them, estimate from traces, run experiments.
#include "swrw/error.hpp"
#include "swrw/estimation.hpp"
#include "swrw/harness.hpp"
#include "swrw/io.hpp"
#include "swrw/pipeline.hpp"
#include "swrw/scenarios.hpp"
#include "swrw/walk.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <algorithm>
#include <map>
#include <set>

namespace fs = std::filesystem;
using namespace swrw;

namespace {

struct ScenarioFlags {
    std::string kind = "two_community";
    double scale = 0.1;
    std::string labels = "random";
    double irrelevant_factor = 0.0;
    double irrelevant_links = 1.0;
    std::size_t category_size = 4;
    std::size_t clique_size = 20;
    std::size_t tiny_size = 2;
    std::size_t attachment = 1;

    void add(CLI::App* app)
    {
        app->add_option("--scenario", kind, "two_community | toy_a | toy_b")->capture_default_str();
        app->add_option("--scale", scale, "size multiplier of the two-community graph")->capture_default_str();
        app->add_option("--labels", labels, "random | clustered")->capture_default_str();
        app->add_option("--irrelevant-factor", irrelevant_factor, "irrelevant nodes per relevant node")
            ->capture_default_str();
        app->add_option("--irrelevant-links", irrelevant_links, "cross edges per irrelevant node")
            ->capture_default_str();
        app->add_option("--category-size", category_size, "toy_a nodes per category")->capture_default_str();
        app->add_option("--clique-size", clique_size, "toy_b clique size")->capture_default_str();
        app->add_option("--tiny-size", tiny_size, "toy_b tiny category size")->capture_default_str();
        app->add_option("--attachment", attachment, "toy_b clique neighbors per tiny node")->capture_default_str();
    }

    ScenarioSpec spec() const
    {
        ScenarioSpec s;
        s.kind = parse_scenario_kind(kind);
        s.scale = scale;
        s.labels = parse_label_mode(labels);
        s.irrelevant_factor = irrelevant_factor;
        s.irrelevant_links = irrelevant_links;
        s.category_size = category_size;
        s.clique_size = clique_size;
        s.toy_tiny_size = tiny_size;
        s.attachment = attachment;
        s.validate();
        return s;
    }
};

struct SwrwFlags {
    double gamma = 100.0;
    double f_irrelevant = 0.01;
    std::string conflict = "hybrid";
    std::string objective = "sizes";
    std::optional<std::size_t> pilot_len;
    double pilot_fraction = 0.065;

    void add(CLI::App* app)
    {
        app->add_option("--gamma", gamma, "maximal resolution")->capture_default_str();
        app->add_option("--f-irrelevant", f_irrelevant, "mass left on the irrelevant category")
            ->capture_default_str();
        app->add_option("--conflict", conflict, "arithmetic | geometric | max | hybrid")->capture_default_str();
        app->add_option("--objective", objective, "proportional | mean | max | sum | sizes")->capture_default_str();
        app->add_option("--pilot-len", pilot_len, "pilot RW length (default: pilot-fraction of n)");
        app->add_option("--pilot-fraction", pilot_fraction)->capture_default_str();
    }

    SwrwConfig config() const
    {
        SwrwConfig c;
        c.gamma = gamma;
        c.f_irrelevant = f_irrelevant;
        c.conflict = parse_conflict_rule(conflict);
        c.objective = parse_objective(objective);
        c.pilot_length = pilot_len;
        c.pilot_fraction = pilot_fraction;
        c.validate();
        return c;
    }
};

std::map<std::int64_t, double> read_node_values(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::map<std::int64_t, double> out;
    std::int64_t v = 0;
    double x = 0.0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream ss(line);
        if (!(ss >> v >> x)) {
            throw Error(path.string() + ":" + std::to_string(lineno) + ": expected 'v value'");
        }
        out[v] = x;
    }
    return out;
}

std::vector<double> dense_values(const WeightedGraph& g, const std::map<std::int64_t, double>& values,
                                 const std::string& what)
{
    std::vector<double> out(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto it = values.find(g.original_id(v));
        if (it == values.end()) {
            throw Error(what + " missing for node " + std::to_string(g.original_id(v)));
        }
        out[v] = it->second;
    }
    return out;
}

void write_manifest(const fs::path& path, const std::vector<std::pair<std::string, std::string>>& entries)
{
    auto out = open_output(path);
    for (const auto& [k, v] : entries) {
        out << k << '=' << v << '\n';
    }
}

fs::path sibling(const fs::path& file, const std::string& suffix)
{
    fs::path p = file;
    p.replace_extension();
    return p.string() + suffix;
}

int cmd_generate(const ScenarioFlags& flags, std::uint64_t seed, const fs::path& out_dir)
{
    const ScenarioSpec spec = flags.spec();
    const Scenario s = generate(spec, seed);
    fs::create_directories(out_dir);
    {
        auto out = open_output(out_dir / "graph.txt");
        write_edge_list(out, s.graph);
    }
    {
        auto out = open_output(out_dir / "categories.txt");
        write_categories(out, s.graph, s.partition);
    }
    std::vector<std::pair<std::string, std::string>> m{
        {"scenario", flags.kind},
        {"seed", std::to_string(seed)},
        {"scale", format_double(flags.scale)},
        {"labels", flags.labels},
        {"irrelevant-factor", format_double(flags.irrelevant_factor)},
        {"irrelevant-links", format_double(flags.irrelevant_links)},
        {"category-size", std::to_string(flags.category_size)},
        {"clique-size", std::to_string(flags.clique_size)},
        {"tiny-size", std::to_string(flags.tiny_size)},
        {"attachment", std::to_string(flags.attachment)},
    };
    write_manifest(out_dir / "manifest.txt", m);
    std::cout << "nodes=" << s.graph.node_count() << " edges=" << s.graph.edge_count();
    if (auto irr = s.partition.irrelevant()) {
        std::cout << " irrelevant=" << s.partition.label(*irr);
    }
    std::cout << '\n';
    return 0;
}

struct SampleArgs {
    fs::path graph;
    fs::path categories;
    std::vector<std::string> irrelevant;
    std::string method = "rw";
    std::size_t n = 0;
    std::size_t burn_in = 0;
    std::optional<std::int64_t> start;
    fs::path node_weights;
    fs::path out;
    fs::path plan;
};

int cmd_sample(const SampleArgs& a, const SwrwFlags& sw, std::uint64_t seed)
{
    WeightedGraph g = read_edge_list(a.graph);
    CategoryPartition p =
        a.categories.empty() ? CategoryPartition::single(g.node_count()) : read_categories(a.categories, g, a.irrelevant);
    const Sampler method = parse_sampler(a.method);
    const CrawlContext ctx(std::move(g), std::move(p));
    WalkOptions opts;
    opts.n = a.n;
    opts.seed = seed;
    opts.burn_in = a.burn_in;
    if (a.start) {
        auto v = ctx.graph().find_node(*a.start);
        if (!v) {
            throw Error("start node " + std::to_string(*a.start) + " is not in the graph");
        }
        opts.start = *v;
    }
    if (method == Sampler::wis && a.node_weights.empty()) {
        throw Error("wis needs --node-weights");
    }
    if (method != Sampler::wis && !a.node_weights.empty()) {
        throw Error("--node-weights only applies to wis");
    }
    WalkSample sample;
    std::optional<EdgeWeightPlan> plan;
    switch (method) {
    case Sampler::uis: sample = uis(ctx, a.n, seed); break;
    case Sampler::wis: {
        const auto z = dense_values(ctx.graph(), read_node_values(a.node_weights), "node weight");
        sample = wis(ctx, z, a.n, seed);
        break;
    }
    case Sampler::rw: sample = rw(ctx, opts); break;
    case Sampler::mhrw: sample = mhrw(ctx, opts); break;
    case Sampler::wrw: sample = wrw(ctx, opts); break;
    case Sampler::swrw: {
        auto r = run_swrw(ctx, sw.config(), a.n, seed);
        for (const auto& w : r.plan.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        sample = std::move(r.sample);
        plan = std::move(r.plan);
        break;
    }
    }
    if (!a.out.parent_path().empty()) {
        fs::create_directories(a.out.parent_path());
    }
    {
        auto out = open_output(a.out);
        write_trace(out, sample, ctx.graph());
    }
    if (plan) {
        const fs::path plan_path = a.plan.empty() ? sibling(a.out, ".plan.csv") : a.plan;
        auto out = open_output(plan_path);
        write_plan(out, *plan);
        auto cfg = sw.config();
        std::cout << "plan=" << plan_path.string() << " gamma=" << format_double(cfg.gamma)
                  << " f_irrelevant=" << format_double(cfg.f_irrelevant) << '\n';
    }
    std::cout << "visits=" << sample.size() << '\n';
    return 0;
}

struct EstimateArgs {
    std::vector<fs::path> traces;
    std::string estimator = "sizes";
    fs::path graph;
    fs::path categories;
    std::vector<std::string> irrelevant;
    fs::path values;
    fs::path out;
    fs::path summary;
};

int cmd_estimate(const EstimateArgs& a)
{
    std::optional<WeightedGraph> g;
    std::optional<CategoryPartition> p;
    if (!a.graph.empty()) {
        g = read_edge_list(a.graph);
        if (!a.categories.empty()) {
            p = read_categories(a.categories, *g, a.irrelevant);
        }
    }
    std::map<std::int64_t, double> values;
    if (a.estimator == "mean") {
        if (a.values.empty()) {
            throw Error("the mean estimator needs --values");
        }
        values = read_node_values(a.values);
    } else if (a.estimator != "sizes" && a.estimator != "vol_node" && a.estimator != "vol_star") {
        throw Error("unknown estimator '" + a.estimator + "' (mean, sizes, vol_node, vol_star)");
    }

    struct Row {
        std::size_t rep;
        std::string category;
        double estimate;
        std::optional<double> truth;
    };
    std::vector<Row> rows;
    for (std::size_t r = 0; r < a.traces.size(); ++r) {
        const WalkSample s = read_trace(a.traces[r]);
        auto truth_of = [&](const std::string& label) -> std::optional<double> {
            if (!g || !p) {
                return std::nullopt;
            }
            auto c = p->find(label);
            if (!c) {
                return 0.0;
            }
            const auto st = set_stats(*g, *p, *c);
            return a.estimator == "sizes" ? st.size_fraction : st.volume_fraction;
        };
        if (a.estimator == "mean") {
            const double est = hh_mean_by(s, [&](const Visit& v) {
                auto it = values.find(v.node);
                if (it == values.end()) {
                    throw Error("no value for node " + std::to_string(v.node));
                }
                return it->second;
            });
            std::optional<double> truth;
            if (g) {
                double sum = 0.0;
                for (double x : dense_values(*g, values, "value")) {
                    sum += x;
                }
                truth = sum / static_cast<double>(g->node_count());
            }
            rows.push_back({r, "all", est, truth});
            continue;
        }
        std::vector<double> est = a.estimator == "sizes"      ? category_size_fractions(s)
                                  : a.estimator == "vol_node" ? volume_fraction_node(s)
                                                              : volume_fraction_star(s);
        for (std::size_t c = 0; c < est.size(); ++c) {
            rows.push_back({r, s.category_labels[c], est[c], truth_of(s.category_labels[c])});
        }
    }
    if (!a.out.parent_path().empty()) {
        fs::create_directories(a.out.parent_path());
    }
    {
        auto out = open_output(a.out);
        out << "replication,category,estimate,truth\n";
        for (const auto& row : rows) {
            out << row.rep << ',' << row.category << ',' << format_double(row.estimate) << ','
                << (row.truth ? format_double(*row.truth) : "") << '\n';
        }
    }
    if (!a.summary.empty()) {
        std::map<std::string, EstimateSeries> series;
        for (const auto& row : rows) {
            if (!row.truth) {
                throw Error("--summary needs ground truth (--graph and --categories)");
            }
            auto& s = series[row.category];
            s.label = row.category;
            s.truth = *row.truth;
            s.estimates.push_back(row.estimate);
        }
        auto out = open_output(a.summary);
        out << "category,n,nrmse\n";
        for (const auto& [label, s] : series) {
            out << label << ',' << s.estimates.size() << ','
                << (s.truth != 0.0 ? format_double(s.nrmse()) : std::string("nan")) << '\n';
        }
    }
    std::cout << "rows=" << rows.size() << '\n';
    return 0;
}

std::string_view strip(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Turns the key=value lines of a --config file into --key=value flags placed
// right after the subcommand. Keys also given on the command line are skipped,
// so explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> path;
    std::set<std::string> explicit_keys;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
        }
        if (a.rfind("--", 0) == 0) {
            explicit_keys.insert(a.substr(2, a.find('=') - 2));
        }
    }
    if (!path || args.empty()) {
        return args;
    }
    std::ifstream in(*path);
    if (!in) {
        throw Error("cannot read config " + *path);
    }
    std::vector<std::string> extra;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = strip(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw Error(*path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key(strip(body.substr(0, eq)));
        std::string value(strip(body.substr(eq + 1)));
        if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
            value = value.substr(1, value.size() - 2);
        }
        if (key == "config" || explicit_keys.count(key)) {
            continue;
        }
        extra.push_back("--" + key + "=" + value);
    }
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    return args;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stratified weighted random walk sampling toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::optional<std::uint64_t> seed;
    fs::path config_path;

    ScenarioFlags gen_flags;
    fs::path gen_out;
    auto* gen = app.add_subcommand("generate", "write a synthetic graph and its categories");
    gen->add_option("--config", config_path, "key=value file")->check(CLI::ExistingFile);
    gen_flags.add(gen);
    gen->add_option("--seed", seed, "master seed")->required();
    gen->add_option("--out", gen_out, "output directory")->required();

    SampleArgs sample_args;
    SwrwFlags sample_sw;
    auto* sample = app.add_subcommand("sample", "crawl a graph and write a trace");
    sample->add_option("--config", config_path, "key=value file")->check(CLI::ExistingFile);
    sample->add_option("--graph", sample_args.graph, "edge list")->required()->check(CLI::ExistingFile);
    sample->add_option("--categories", sample_args.categories, "category file")->check(CLI::ExistingFile);
    sample->add_option("--irrelevant", sample_args.irrelevant, "labels merged into the irrelevant category");
    sample->add_option("--method", sample_args.method, "uis | wis | rw | mhrw | wrw | swrw")->capture_default_str();
    sample->add_option("--n", sample_args.n, "sample length")->required();
    sample->add_option("--burn-in", sample_args.burn_in)->capture_default_str();
    sample->add_option("--start", sample_args.start, "start node id");
    sample->add_option("--node-weights", sample_args.node_weights, "'v z' file for wis")->check(CLI::ExistingFile);
    sample->add_option("--seed", seed, "seed")->required();
    sample->add_option("--out", sample_args.out, "trace CSV")->required();
    sample->add_option("--plan", sample_args.plan, "edge-weight plan CSV (swrw)");
    sample_sw.add(sample);

    EstimateArgs est_args;
    auto* estimate = app.add_subcommand("estimate", "estimate from one or more traces");
    estimate->add_option("--config", config_path, "key=value file")->check(CLI::ExistingFile);
    estimate->add_option("--trace", est_args.traces, "trace CSV (repeat for replications)")
        ->required()
        ->check(CLI::ExistingFile);
    estimate->add_option("--estimator", est_args.estimator, "mean | sizes | vol_node | vol_star")
        ->capture_default_str();
    estimate->add_option("--graph", est_args.graph, "edge list for ground truth")->check(CLI::ExistingFile);
    estimate->add_option("--categories", est_args.categories, "category file")->check(CLI::ExistingFile);
    estimate->add_option("--irrelevant", est_args.irrelevant);
    estimate->add_option("--values", est_args.values, "'v x' file for the mean estimator")
        ->check(CLI::ExistingFile);
    estimate->add_option("--out", est_args.out, "estimates CSV")->required();
    estimate->add_option("--summary", est_args.summary, "per-category NRMSE CSV");

    ExperimentConfig exp_cfg;
    ScenarioFlags exp_flags;
    SwrwFlags exp_sw;
    fs::path exp_out;
    auto* experiment = app.add_subcommand("experiment", "run a preset experiment");
    experiment->add_option("--config", config_path, "key=value file, e.g. a manifest.txt of an earlier run")->check(CLI::ExistingFile);
    experiment->add_option("--preset", exp_cfg.preset, "figure5 | gain | sweep | volumes")->capture_default_str();
    exp_flags.add(experiment);
    exp_sw.add(experiment);
    experiment->add_option("--seed", seed, "master seed")->required();
    experiment->add_option("--reps", exp_cfg.reps, "replications per grid point")->capture_default_str();
    experiment->add_option("--n", exp_cfg.n_grid, "sample lengths")->capture_default_str()->delimiter(',');
    experiment->add_option("--w-grid", exp_cfg.w_grid, "weights (wrw, wis) and gammas (swrw)")
        ->capture_default_str()
        ->delimiter(',');
    experiment->add_flag("--exclude-stuck", exp_cfg.exclude_stuck, "drop stuck runs from the NRMSE");
    experiment->add_option("--out", exp_out, "output directory")->required();

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (gen->parsed()) {
            return cmd_generate(gen_flags, *seed, gen_out);
        }
        if (sample->parsed()) {
            return cmd_sample(sample_args, sample_sw, *seed);
        }
        if (estimate->parsed()) {
            return cmd_estimate(est_args);
        }
        exp_cfg.scenario = exp_flags.spec();
        exp_cfg.swrw = exp_sw.config();
        exp_cfg.seed = *seed;
        write_report(run_experiment(exp_cfg), exp_out);
        std::cout << "wrote " << exp_out.string() << '\n';
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
