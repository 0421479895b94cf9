#include "swrw/io.hpp"

#include "swrw/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace swrw {

std::string format_double(double x)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) {
        throw Error("cannot format number");
    }
    return {buf, end};
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    return out;
}

namespace {

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    return in;
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_number(std::string_view token, std::string_view what, std::size_t line)
{
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error("line " + std::to_string(line) + ": bad " + std::string(what) + " '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        const auto pos = s.find(sep, begin);
        out.push_back(s.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
        if (pos == std::string_view::npos) {
            return out;
        }
        begin = pos + 1;
    }
}

std::vector<std::string_view> tokens(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (i > b) {
            out.push_back(s.substr(b, i - b));
        }
    }
    return out;
}

void check_label(const std::string& label)
{
    if (label.empty() || label.find_first_of(",;:| \t\r\n#") != std::string::npos) {
        throw Error("category label '" + label + "' is empty or contains a reserved character");
    }
}

} // namespace

WeightedGraph read_edge_list(std::istream& in)
{
    GraphBuilder b;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        const auto t = tokens(trim(s));
        if (t.empty()) {
            continue;
        }
        if (t.size() != 2 && t.size() != 3) {
            throw Error("line " + std::to_string(line) + ": expected 'u v' or 'u v w'");
        }
        const auto u = parse_number<std::int64_t>(t[0], "node id", line);
        const auto v = parse_number<std::int64_t>(t[1], "node id", line);
        const double w = t.size() == 3 ? parse_number<double>(t[2], "weight", line) : 1.0;
        try {
            b.add_edge(u, v, w);
        } catch (const Error& e) {
            throw Error("line " + std::to_string(line) + ": " + e.what());
        }
    }
    return b.build();
}

WeightedGraph read_edge_list(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g, bool with_weights)
{
    for (const Edge& e : g.edges()) {
        out << g.original_id(e.u) << ' ' << g.original_id(e.v);
        if (with_weights) {
            out << ' ' << format_double(e.weight);
        }
        out << '\n';
    }
}

CategoryPartition read_categories(std::istream& in, const WeightedGraph& g, std::span<const std::string> irrelevant)
{
    std::vector<std::string> labels(g.node_count(), kOtherLabel);
    std::vector<char> seen(g.node_count(), 0);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        const auto t = tokens(trim(s));
        if (t.empty()) {
            continue;
        }
        if (t.size() != 2) {
            throw Error("line " + std::to_string(line) + ": expected 'v label'");
        }
        const auto id = parse_number<std::int64_t>(t[0], "node id", line);
        const auto v = g.find_node(id);
        if (!v) {
            throw Error("line " + std::to_string(line) + ": node " + std::to_string(id) + " is not in the graph");
        }
        if (seen[*v]) {
            throw Error("line " + std::to_string(line) + ": node " + std::to_string(id) + " labeled twice");
        }
        seen[*v] = 1;
        labels[*v] = std::string(t[1]);
        check_label(labels[*v]);
    }
    return CategoryPartition::from_node_labels(labels, irrelevant);
}

CategoryPartition read_categories(const std::filesystem::path& path, const WeightedGraph& g,
                                  std::span<const std::string> irrelevant)
{
    auto in = open_input(path);
    return read_categories(in, g, irrelevant);
}

void write_categories(std::ostream& out, const WeightedGraph& g, const CategoryPartition& p)
{
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << g.original_id(v) << ' ' << p.label(p.category_of(v)) << '\n';
    }
}

void write_node_labels(std::ostream& out, const WeightedGraph& g, std::span<const std::string> labels)
{
    if (labels.size() != g.node_count()) {
        throw Error("need one label per node");
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << g.original_id(v) << ' ' << labels[v] << '\n';
    }
}

void write_trace(std::ostream& out, const WalkSample& s, const WeightedGraph& g)
{
    for (const auto& l : s.category_labels) {
        check_label(l);
    }
    out << "# sampler=" << to_string(s.sampler) << '\n';
    out << "# seed=" << s.seed << '\n';
    out << "# burn_in=" << s.burn_in << '\n';
    out << "# categories=";
    for (std::size_t c = 0; c < s.category_labels.size(); ++c) {
        out << (c ? "|" : "") << s.category_labels[c];
    }
    out << '\n';
    if (s.irrelevant) {
        out << "# irrelevant=" << s.category_labels[*s.irrelevant] << '\n';
    }
    out << "step,node,degree,category,node_weight" << (s.has_neighbor_counts ? ",neighbors" : "") << '\n';
    for (std::size_t i = 0; i < s.visits.size(); ++i) {
        const Visit& v = s.visits[i];
        out << i << ',' << g.original_id(v.node) << ',' << v.degree << ',' << s.category_labels[v.category] << ','
            << format_double(v.weight);
        if (s.has_neighbor_counts) {
            out << ',';
            bool first = true;
            for (const auto& e : s.neighbor_counts(v)) {
                out << (first ? "" : ";") << s.category_labels[e.category] << ':' << e.count;
                first = false;
            }
        }
        out << '\n';
    }
}

WalkSample read_trace(std::istream& in)
{
    WalkSample s;
    std::map<std::string, std::string, std::less<>> meta;
    std::string raw;
    std::size_t line = 0;
    bool header = false;
    std::map<std::string, CategoryId, std::less<>> ids;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view row = trim(raw);
        if (row.empty()) {
            continue;
        }
        if (row.front() == '#') {
            if (header) {
                throw Error("line " + std::to_string(line) + ": comment after the header");
            }
            const auto body = trim(row.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string_view::npos) {
                meta[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
            }
            continue;
        }
        if (!header) {
            header = true;
            if (row == "step,node,degree,category,node_weight,neighbors") {
                s.has_neighbor_counts = true;
            } else if (row != "step,node,degree,category,node_weight") {
                throw Error("line " + std::to_string(line) + ": unexpected trace header");
            }
            if (auto it = meta.find("sampler"); it != meta.end()) {
                s.sampler = parse_sampler(it->second);
            } else {
                throw Error("trace lacks a sampler line");
            }
            if (auto it = meta.find("seed"); it != meta.end()) {
                s.seed = parse_number<std::uint64_t>(it->second, "seed", line);
            }
            if (auto it = meta.find("burn_in"); it != meta.end()) {
                s.burn_in = parse_number<std::size_t>(it->second, "burn_in", line);
            }
            if (auto it = meta.find("categories"); it != meta.end() && !it->second.empty()) {
                for (auto l : split(it->second, '|')) {
                    ids.emplace(std::string(l), static_cast<CategoryId>(s.category_labels.size()));
                    s.category_labels.emplace_back(l);
                }
            }
            if (auto it = meta.find("irrelevant"); it != meta.end()) {
                auto c = ids.find(it->second);
                if (c == ids.end()) {
                    throw Error("irrelevant label '" + it->second + "' is not a trace category");
                }
                s.irrelevant = c->second;
            }
            continue;
        }
        const auto f = split(row, ',');
        if (f.size() != (s.has_neighbor_counts ? 6u : 5u)) {
            throw Error("line " + std::to_string(line) + ": wrong number of fields");
        }
        auto category = [&](std::string_view label) {
            auto it = ids.find(label);
            if (it == ids.end()) {
                it = ids.emplace(std::string(label), static_cast<CategoryId>(s.category_labels.size())).first;
                s.category_labels.emplace_back(label);
            }
            return it->second;
        };
        if (parse_number<std::size_t>(f[0], "step", line) != s.visits.size()) {
            throw Error("line " + std::to_string(line) + ": steps must run 0, 1, 2, ...");
        }
        Visit v;
        const auto node = parse_number<std::int64_t>(f[1], "node", line);
        if (node < 0 || node > std::numeric_limits<NodeId>::max()) {
            throw Error("line " + std::to_string(line) + ": node id out of range");
        }
        v.node = static_cast<NodeId>(node);
        v.degree = parse_number<std::uint32_t>(f[2], "degree", line);
        v.category = category(f[3]);
        v.weight = parse_number<double>(f[4], "node_weight", line);
        if (s.has_neighbor_counts) {
            v.neighbors_begin = s.neighbor_entries.size();
            if (!f[5].empty()) {
                for (auto pair : split(f[5], ';')) {
                    const auto colon = pair.find(':');
                    if (colon == std::string_view::npos) {
                        throw Error("line " + std::to_string(line) + ": bad neighbor entry");
                    }
                    s.neighbor_entries.push_back(
                        {category(pair.substr(0, colon)),
                         parse_number<std::uint32_t>(pair.substr(colon + 1), "neighbor count", line)});
                }
            }
            v.neighbors_size = static_cast<std::uint32_t>(s.neighbor_entries.size() - v.neighbors_begin);
        }
        s.visits.push_back(v);
    }
    if (!header) {
        throw Error("trace has no header");
    }
    return s;
}

WalkSample read_trace(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_trace(in);
}

void write_plan(std::ostream& out, const EdgeWeightPlan& plan)
{
    out << "category,vol_hat,vol_tilde,w_wis,w_tilde,w_edge\n";
    for (std::size_t c = 0; c < plan.labels.size(); ++c) {
        out << plan.labels[c] << ',' << format_double(plan.vol_hat[c]) << ',' << format_double(plan.vol_tilde[c])
            << ',' << format_double(plan.w_wis[c]) << ',' << format_double(plan.w_tilde[c]) << ','
            << format_double(plan.w_edge[c]) << '\n';
    }
}

void write_allocation(std::ostream& out, const StratumSpec& spec, const AllocationPlan& plan)
{
    out << "category,size,sigma,n_i,weight\n";
    for (std::size_t i = 0; i < spec.strata.size(); ++i) {
        const auto& s = spec.strata[i];
        out << s.label << ',' << format_double(s.size) << ',' << format_double(s.sigma.value_or(1.0)) << ','
            << format_double(plan.n[i]) << ',' << format_double(plan.weight[i]) << '\n';
    }
}

} // namespace swrw
