#include "swrw/error.hpp"
#include "swrw/estimation.hpp"
#include "swrw/harness.hpp"
#include "swrw/pipeline.hpp"
#include "swrw/scenarios.hpp"
#include "swrw/stratification.hpp"
#include "swrw/walk.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace swrw;

namespace {

WeightedGraph graph_from_edges(const std::vector<py::tuple>& edges)
{
    GraphBuilder b;
    b.reserve(edges.size());
    for (const auto& t : edges) {
        if (t.size() != 2 && t.size() != 3) {
            throw Error("edges must be (u, v) or (u, v, w) tuples");
        }
        const double w = t.size() == 3 ? t[2].cast<double>() : 1.0;
        b.add_edge(t[0].cast<std::int64_t>(), t[1].cast<std::int64_t>(), w);
    }
    return b.build();
}

SwrwConfig swrw_config(double gamma, double f_irrelevant, const std::string& conflict, const std::string& objective,
                       std::optional<std::size_t> pilot_len)
{
    SwrwConfig c;
    c.gamma = gamma;
    c.f_irrelevant = f_irrelevant;
    c.conflict = parse_conflict_rule(conflict);
    c.objective = parse_objective(objective);
    c.pilot_length = pilot_len;
    c.validate();
    return c;
}

py::dict curve_dict(const CurvePoint& p)
{
    py::dict d;
    d["scenario"] = p.scenario;
    d["method"] = p.method;
    d["param"] = p.param;
    d["n"] = p.n;
    d["cost"] = p.cost;
    d["reps"] = p.reps;
    d["nrmse"] = p.nrmse;
    d["stderr"] = p.stderr_nrmse;
    d["p_visited"] = p.p_visited;
    d["stuck"] = p.stuck;
    d["low_confidence"] = p.low_confidence;
    return d;
}

py::dict gain_dict(const GainRow& g)
{
    py::dict d;
    d["scenario"] = g.scenario;
    d["method"] = g.method;
    d["param"] = g.param;
    d["baseline"] = g.baseline;
    d["n_opt"] = g.n_opt;
    d["cost_opt"] = g.cost_opt;
    d["nrmse"] = g.nrmse;
    d["cost_base"] = g.cost_base;
    d["alpha"] = g.alpha;
    d["status"] = g.status;
    return d;
}

} // namespace

PYBIND11_MODULE(_swrw, m)
{
    m.doc() = "Stratified weighted random walk sampling";

    const auto& base = py::register_exception<Error>(m, "SwrwError", PyExc_ValueError);
    py::register_exception<StuckError>(m, "StuckError", base);
    py::register_exception<PilotError>(m, "PilotError", base);

    py::class_<WeightedGraph>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("edges"))
        .def_property_readonly("node_count", &WeightedGraph::node_count)
        .def_property_readonly("edge_count", &WeightedGraph::edge_count)
        .def_property_readonly("volume", &WeightedGraph::volume)
        .def_property_readonly("total_weight", &WeightedGraph::total_weight)
        .def("degree", &WeightedGraph::degree, py::arg("v"))
        .def("node_weight", &WeightedGraph::node_weight, py::arg("v"))
        .def("original_id", &WeightedGraph::original_id, py::arg("v"))
        .def("find_node", &WeightedGraph::find_node, py::arg("original"))
        .def("edges",
             [](const WeightedGraph& g) {
                 std::vector<std::tuple<NodeId, NodeId, double>> out;
                 for (const Edge& e : g.edges()) {
                     out.emplace_back(e.u, e.v, e.weight);
                 }
                 return out;
             })
        .def("with_edge_weights", &WeightedGraph::with_edge_weights, py::arg("weights"))
        .def("is_connected", [](const WeightedGraph& g) { return is_connected(g); });

    py::class_<CategoryPartition>(m, "Partition")
        .def(py::init([](const std::vector<std::string>& labels, const std::vector<std::string>& irrelevant) {
                 return CategoryPartition::from_node_labels(labels, irrelevant);
             }),
             py::arg("node_labels"), py::arg("irrelevant") = std::vector<std::string>{})
        .def_property_readonly("labels",
                               [](const CategoryPartition& p) {
                                   return std::vector<std::string>(p.labels().begin(), p.labels().end());
                               })
        .def_property_readonly("irrelevant", &CategoryPartition::irrelevant)
        .def("category_of", &CategoryPartition::category_of, py::arg("v"))
        .def("size", &CategoryPartition::size, py::arg("category"))
        .def("find", &CategoryPartition::find, py::arg("label"));

    py::class_<Visit>(m, "Visit")
        .def_readonly("node", &Visit::node)
        .def_readonly("degree", &Visit::degree)
        .def_readonly("category", &Visit::category)
        .def_readonly("weight", &Visit::weight);

    py::class_<WalkSample>(m, "Sample")
        .def_property_readonly("sampler", [](const WalkSample& s) { return std::string(to_string(s.sampler)); })
        .def_readonly("seed", &WalkSample::seed)
        .def_readonly("category_labels", &WalkSample::category_labels)
        .def_readonly("visits", &WalkSample::visits)
        .def_property_readonly("nodes",
                               [](const WalkSample& s) {
                                   std::vector<NodeId> out;
                                   for (const Visit& v : s.visits) {
                                       out.push_back(v.node);
                                   }
                                   return out;
                               })
        .def("__len__", &WalkSample::size);

    m.def(
        "sample",
        [](const WeightedGraph& g, std::optional<CategoryPartition> p, const std::string& method, std::size_t n,
           std::uint64_t seed, std::optional<std::vector<double>> weights, std::size_t burn_in,
           std::optional<NodeId> start, double gamma, double f_irrelevant, const std::string& conflict,
           const std::string& objective, std::optional<std::size_t> pilot_len) {
            const CrawlContext ctx = p ? CrawlContext(g, *p) : CrawlContext(g);
            WalkOptions opts;
            opts.n = n;
            opts.seed = seed;
            opts.burn_in = burn_in;
            opts.start = start;
            py::gil_scoped_release release;
            switch (parse_sampler(method)) {
            case Sampler::uis: return uis(ctx, n, seed);
            case Sampler::wis:
                if (!weights) {
                    throw Error("wis needs weights");
                }
                return wis(ctx, *weights, n, seed);
            case Sampler::rw: return rw(ctx, opts);
            case Sampler::mhrw: return mhrw(ctx, opts);
            case Sampler::wrw: return wrw(ctx, opts);
            case Sampler::swrw:
                return run_swrw(ctx, swrw_config(gamma, f_irrelevant, conflict, objective, pilot_len), n, seed).sample;
            }
            throw Error("unknown sampler");
        },
        py::arg("graph"), py::arg("partition") = py::none(), py::arg("method") = "rw", py::arg("n") = 1000,
        py::arg("seed") = 0, py::arg("weights") = py::none(), py::arg("burn_in") = 0, py::arg("start") = py::none(),
        py::arg("gamma") = 100.0, py::arg("f_irrelevant") = 0.01, py::arg("conflict") = "hybrid",
        py::arg("objective") = "sizes", py::arg("pilot_len") = py::none(),
        "Crawl with uis, wis, rw, mhrw, wrw or swrw.");

    m.def("exact_stationary", [](const WeightedGraph& g) { return exact_stationary(g).probabilities; },
          py::arg("graph"));
    m.def(
        "hh_mean", [](const WalkSample& s, const std::vector<double>& x) { return hh_mean(s, x); },
        py::arg("sample"), py::arg("values"),
          "Re-weighted mean of per-node values (indexed by dense node id).");
    m.def(
        "hh_total",
        [](const WalkSample& s, const std::vector<double>& x, const std::vector<double>& pi) {
            return hh_total(s, x, pi);
        },
        py::arg("sample"), py::arg("values"), py::arg("pi"));
    m.def("size_fractions", &category_size_fractions, py::arg("sample"));
    m.def(
        "volume_fractions",
        [](const WalkSample& s, bool star) { return star ? volume_fraction_star(s) : volume_fraction_node(s); },
        py::arg("sample"), py::arg("star") = true);
    m.def(
        "nrmse", [](const std::vector<double>& e, double truth) { return nrmse(e, truth); }, py::arg("estimates"),
        py::arg("truth"));

    m.def(
        "allocate",
        [](const std::vector<double>& sizes, const std::string& objective, double budget,
           std::optional<std::vector<double>> sigmas, std::optional<std::vector<bool>> relevant) {
            StratumSpec spec;
            spec.budget = budget;
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                Stratum s;
                s.label = std::to_string(i);
                s.size = sizes[i];
                if (sigmas) {
                    s.sigma = sigmas->at(i);
                }
                s.relevant = relevant ? relevant->at(i) : true;
                spec.strata.push_back(std::move(s));
            }
            return allocate(spec, parse_objective(objective)).n;
        },
        py::arg("sizes"), py::arg("objective") = "sizes", py::arg("budget") = 1.0, py::arg("sigmas") = py::none(),
        py::arg("relevant") = py::none());
    m.def(
        "gain",
        [](const std::vector<double>& sizes, const std::string& objective, std::optional<std::vector<double>> sigmas) {
            StratumSpec spec;
            spec.budget = 1.0;
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                Stratum s;
                s.label = std::to_string(i);
                s.size = sizes[i];
                if (sigmas) {
                    s.sigma = sigmas->at(i);
                }
                spec.strata.push_back(std::move(s));
            }
            return gain(spec, parse_objective(objective));
        },
        py::arg("sizes"), py::arg("objective") = "sizes", py::arg("sigmas") = py::none());
    m.def("wis_two_category_variance", &wis_two_category_variance, py::arg("f1"), py::arg("n"), py::arg("w1"),
          py::arg("w2"));
    m.def(
        "toy_a_analytic",
        [](double p, double n_wh) {
            auto r = toy_a_analytic(p, n_wh);
            return std::make_pair(r.mean, r.variance);
        },
        py::arg("p"), py::arg("n_wh"));

    m.def(
        "generate",
        [](const std::string& kind, double scale, const std::string& labels, std::uint64_t seed,
           double irrelevant_factor, double irrelevant_links) {
            ScenarioSpec spec;
            spec.kind = parse_scenario_kind(kind);
            spec.scale = scale;
            spec.labels = parse_label_mode(labels);
            spec.irrelevant_factor = irrelevant_factor;
            spec.irrelevant_links = irrelevant_links;
            Scenario s = generate(spec, seed);
            return std::make_tuple(std::move(s.graph), std::move(s.partition));
        },
        py::arg("kind") = "two_community", py::arg("scale") = 0.1, py::arg("labels") = "random", py::arg("seed") = 0,
        py::arg("irrelevant_factor") = 0.0, py::arg("irrelevant_links") = 1.0, "Synthetic scenario as (Graph, Partition).");

    m.def(
        "run_experiment",
        [](const std::string& preset, std::uint64_t seed, std::size_t reps, std::vector<std::size_t> n_grid,
           std::vector<double> w_grid, double scale, const std::string& labels, double irrelevant_factor,
           double gamma, std::optional<std::string> out_dir) {
            ExperimentConfig c;
            c.preset = preset;
            c.seed = seed;
            c.reps = reps;
            c.n_grid = std::move(n_grid);
            c.w_grid = std::move(w_grid);
            c.scenario.scale = scale;
            c.scenario.labels = parse_label_mode(labels);
            c.scenario.irrelevant_factor = irrelevant_factor;
            c.swrw.gamma = gamma;
            ExperimentReport report;
            {
                py::gil_scoped_release release;
                report = run_experiment(c);
                if (out_dir) {
                    write_report(report, *out_dir);
                }
            }
            py::list curves;
            py::list gains;
            for (const auto& p : report.curves) {
                curves.append(curve_dict(p));
            }
            for (const auto& g : report.gains) {
                gains.append(gain_dict(g));
            }
            py::dict d;
            d["curves"] = curves;
            d["gains"] = gains;
            d["manifest"] = report.manifest;
            return d;
        },
        py::arg("preset") = "figure5", py::arg("seed") = 0, py::arg("reps") = 25,
        py::arg("n_grid") = std::vector<std::size_t>{500, 1000, 2000, 4000},
        py::arg("w_grid") = std::vector<double>{1, 5, 20, 100}, py::arg("scale") = 0.1, py::arg("labels") = "random",
        py::arg("irrelevant_factor") = 0.0, py::arg("gamma") = 100.0, py::arg("out_dir") = py::none());
}
