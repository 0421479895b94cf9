#include "swrw/stratification.hpp"

#include "swrw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swrw {

std::string_view to_string(Objective o) noexcept
{
    switch (o) {
    case Objective::proportional: return "proportional";
    case Objective::mean: return "mean";
    case Objective::max: return "max";
    case Objective::sum: return "sum";
    case Objective::sizes: return "sizes";
    }
    return "unknown";
}

Objective parse_objective(std::string_view name)
{
    if (name == "neyman") {
        return Objective::mean;
    }
    for (Objective o : {Objective::proportional, Objective::mean, Objective::max, Objective::sum, Objective::sizes}) {
        if (to_string(o) == name) {
            return o;
        }
    }
    throw Error("unknown objective '" + std::string(name) + "'");
}

double StratumSpec::population() const
{
    double n = 0.0;
    for (const auto& s : strata) {
        n += s.size;
    }
    return n;
}

double StratumSpec::relevant_population() const
{
    double n = 0.0;
    for (const auto& s : strata) {
        n += s.relevant ? s.size : 0.0;
    }
    return n;
}

namespace {

double sigma_of(const Stratum& s) { return s.sigma.value_or(1.0); }

void validate(const StratumSpec& spec)
{
    if (spec.strata.empty()) {
        throw Error("stratum spec is empty");
    }
    if (!(spec.budget >= 0.0) || !std::isfinite(spec.budget)) {
        throw Error("budget must be finite and nonnegative");
    }
    for (const auto& s : spec.strata) {
        if (!(s.size > 0.0)) {
            throw Error("stratum '" + s.label + "' must have positive size");
        }
        if (s.sigma && !(*s.sigma >= 0.0)) {
            throw Error("stratum '" + s.label + "' has negative sigma");
        }
    }
}

std::size_t relevant_count(const StratumSpec& spec)
{
    return static_cast<std::size_t>(
        std::count_if(spec.strata.begin(), spec.strata.end(), [](const Stratum& s) { return s.relevant; }));
}

void require_relevant(const StratumSpec& spec, std::size_t at_least, Objective o)
{
    if (relevant_count(spec) < at_least) {
        throw Error("objective '" + std::string(to_string(o)) + "' needs at least " + std::to_string(at_least) +
                    " relevant categories");
    }
}

// n_i proportional to score_i over relevant strata, 0 for irrelevant ones.
AllocationPlan from_scores(const StratumSpec& spec, Objective o, auto score)
{
    AllocationPlan plan;
    plan.objective = o;
    double total = 0.0;
    for (const auto& s : spec.strata) {
        total += s.relevant ? score(s) : 0.0;
    }
    if (!(total > 0.0)) {
        throw Error("degenerate allocation for objective '" + std::string(to_string(o)) + "' (all scores zero)");
    }
    for (const auto& s : spec.strata) {
        plan.n.push_back(s.relevant ? score(s) / total * spec.budget : 0.0);
    }
    plan.weight = plan.n;
    return plan;
}

} // namespace

AllocationPlan proportional(const StratumSpec& spec)
{
    validate(spec);
    AllocationPlan plan;
    plan.objective = Objective::proportional;
    const double N = spec.population();
    for (const auto& s : spec.strata) {
        plan.n.push_back(s.size * spec.budget / N);
    }
    plan.weight = plan.n;
    return plan;
}

AllocationPlan neyman(const StratumSpec& spec)
{
    validate(spec);
    require_relevant(spec, 1, Objective::mean);
    return from_scores(spec, Objective::mean, [](const Stratum& s) { return s.size * sigma_of(s); });
}

AllocationPlan max_precision(const StratumSpec& spec)
{
    validate(spec);
    require_relevant(spec, 2, Objective::max);
    return from_scores(spec, Objective::max, [](const Stratum& s) { return sigma_of(s) * sigma_of(s); });
}

AllocationPlan sum_variances(const StratumSpec& spec)
{
    validate(spec);
    require_relevant(spec, 2, Objective::sum);
    return from_scores(spec, Objective::sum, [](const Stratum& s) { return sigma_of(s); });
}

AllocationPlan relative_sizes(const StratumSpec& spec)
{
    validate(spec);
    require_relevant(spec, 2, Objective::sizes);
    return from_scores(spec, Objective::sizes, [](const Stratum&) { return 1.0; });
}

AllocationPlan allocate(const StratumSpec& spec, Objective objective)
{
    switch (objective) {
    case Objective::proportional: return proportional(spec);
    case Objective::mean: return neyman(spec);
    case Objective::max: return max_precision(spec);
    case Objective::sum: return sum_variances(spec);
    case Objective::sizes: return relative_sizes(spec);
    }
    throw Error("unknown objective");
}

double objective_value(const StratumSpec& spec, Objective objective, const std::vector<double>& n)
{
    validate(spec);
    if (n.size() != spec.strata.size()) {
        throw Error("allocation size does not match the stratum spec");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double N = spec.relevant_population();
    double value = 0.0;
    switch (objective) {
    case Objective::proportional:
    case Objective::mean:
        for (std::size_t i = 0; i < n.size(); ++i) {
            const auto& s = spec.strata[i];
            if (!s.relevant) {
                continue;
            }
            const double sg = sigma_of(s);
            value += sg == 0.0 ? 0.0 : (n[i] > 0.0 ? s.size * s.size * sg * sg / (N * N * n[i]) : inf);
        }
        return value;
    case Objective::max:
    case Objective::sum:
        for (std::size_t i = 0; i < n.size(); ++i) {
            const auto& s = spec.strata[i];
            if (!s.relevant) {
                continue;
            }
            const double sg = sigma_of(s);
            const double v = sg == 0.0 ? 0.0 : (n[i] > 0.0 ? sg * sg / n[i] : inf);
            value = objective == Objective::max ? std::max(value, v) : value + v;
        }
        return value;
    case Objective::sizes: {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (spec.strata[i].relevant) {
                idx.push_back(i);
            }
        }
        if (idx.size() != 2) {
            throw Error("sizes objective is defined for exactly two relevant categories");
        }
        double budget = n[idx[0]] + n[idx[1]];
        // Per-node WIS weights realizing the allocation in expectation.
        const double w1 = n[idx[0]] / spec.strata[idx[0]].size;
        const double w2 = n[idx[1]] / spec.strata[idx[1]].size;
        if (!(w1 > 0.0) || !(w2 > 0.0)) {
            return inf;
        }
        return wis_two_category_variance(spec.strata[idx[0]].size / N, budget, w1, w2);
    }
    }
    throw Error("unknown objective");
}

double gain(const StratumSpec& spec, Objective objective)
{
    validate(spec);
    const double N = spec.relevant_population();
    if (!(N > 0.0)) {
        throw Error("no relevant categories");
    }
    double a = 0.0;
    double b = 0.0;
    switch (objective) {
    case Objective::proportional:
        return 1.0;
    case Objective::mean:
        for (const auto& s : spec.strata) {
            if (s.relevant) {
                a += s.size * sigma_of(s) * sigma_of(s);
                b += s.size * sigma_of(s);
            }
        }
        if (!(b > 0.0)) {
            throw Error("gain undefined: all sigmas are zero");
        }
        return N * a / (b * b);
    case Objective::max:
        require_relevant(spec, 2, objective);
        for (const auto& s : spec.strata) {
            if (s.relevant) {
                a = std::max(a, N / s.size * sigma_of(s) * sigma_of(s));
                b += sigma_of(s) * sigma_of(s);
            }
        }
        if (!(b > 0.0)) {
            throw Error("gain undefined: all sigmas are zero");
        }
        return a / b;
    case Objective::sum:
        require_relevant(spec, 2, objective);
        for (const auto& s : spec.strata) {
            if (s.relevant) {
                a += N / s.size * sigma_of(s) * sigma_of(s);
                b += sigma_of(s);
            }
        }
        if (!(b > 0.0)) {
            throw Error("gain undefined: all sigmas are zero");
        }
        return a / (b * b);
    case Objective::sizes: {
        if (relevant_count(spec) != 2) {
            throw Error("sizes gain is defined for exactly two relevant categories");
        }
        double prod = 1.0;
        for (const auto& s : spec.strata) {
            if (s.relevant) {
                prod *= s.size;
            }
        }
        return N * N / (4.0 * prod);
    }
    }
    throw Error("unknown objective");
}

double gain_with_irrelevant(const StratumSpec& spec, Objective objective)
{
    validate(spec);
    const double N = spec.population();
    const double relevant = spec.relevant_population();
    if (!(relevant > 0.0)) {
        throw Error("irrelevant category covers every node");
    }
    return N / relevant * gain(spec, objective);
}

double wis_two_category_estimate(double x1, double n, double w1, double w2)
{
    if (!(n > 0.0) || x1 < 0.0 || x1 > n) {
        throw Error("need 0 <= X1 <= n and n > 0");
    }
    if (!(w1 > 0.0) || !(w2 > 0.0)) {
        throw Error("category weights must be positive");
    }
    const double den = x1 * (w2 - w1) + n * w1;
    if (den == 0.0) {
        throw Error("estimator denominator is zero");
    }
    return x1 * w2 / den;
}

double wis_two_category_variance(double f1, double n, double w1, double w2)
{
    if (!(f1 >= 0.0 && f1 <= 1.0) || !(n > 0.0) || !(w1 > 0.0) || !(w2 > 0.0)) {
        throw Error("invalid arguments to the two-category variance");
    }
    const double f2 = 1.0 - f1;
    const double m = f1 * w1 + f2 * w2;
    return f1 * f2 / (n * w1 * w2) * m * m;
}

} // namespace swrw
