#include "swrw/estimation.hpp"

#include "swrw/error.hpp"

#include <cmath>

namespace swrw {

namespace detail {

void require_estimable(const WalkSample& s)
{
    if (s.visits.empty()) {
        throw Error("empty sample");
    }
}

void throw_zero_weight(const Visit& v)
{
    throw Error("visit to node " + std::to_string(v.node) + " has non-positive recorded weight");
}

} // namespace detail

VolumeForm default_volume_form(Sampler s) noexcept
{
    switch (s) {
    case Sampler::uis: return VolumeForm::uis;
    case Sampler::rw: return VolumeForm::rw;
    default: return VolumeForm::weighted;
    }
}

double hh_total(const WalkSample& s, std::span<const double> x, std::span<const double> pi)
{
    detail::require_estimable(s);
    double sum = 0.0;
    for (const Visit& v : s.visits) {
        if (v.node >= x.size() || v.node >= pi.size()) {
            throw Error("node " + std::to_string(v.node) + " missing from value or probability map");
        }
        if (!(pi[v.node] > 0.0)) {
            throw Error("sampled node " + std::to_string(v.node) + " has zero sampling probability");
        }
        sum += x[v.node] / pi[v.node];
    }
    return sum / static_cast<double>(s.visits.size());
}

double hh_mean(const WalkSample& s, std::span<const double> x)
{
    return hh_mean_by(s, [&](const Visit& v) {
        if (v.node >= x.size()) {
            throw Error("node " + std::to_string(v.node) + " missing from value map");
        }
        return x[v.node];
    });
}

std::vector<double> category_size_fractions(const WalkSample& s)
{
    detail::require_estimable(s);
    std::vector<double> mass(s.category_count(), 0.0);
    double total = 0.0;
    for (const Visit& v : s.visits) {
        if (!(v.weight > 0.0)) {
            detail::throw_zero_weight(v);
        }
        if (v.category >= mass.size()) {
            throw Error("visit category out of range");
        }
        const double inv = 1.0 / v.weight;
        mass[v.category] += inv;
        total += inv;
    }
    for (double& m : mass) {
        m /= total;
    }
    return mass;
}

std::map<std::uint32_t, double> degree_distribution(const WalkSample& s)
{
    detail::require_estimable(s);
    std::map<std::uint32_t, double> dist;
    double total = 0.0;
    for (const Visit& v : s.visits) {
        if (!(v.weight > 0.0)) {
            detail::throw_zero_weight(v);
        }
        dist[v.degree] += 1.0 / v.weight;
        total += 1.0 / v.weight;
    }
    for (auto& [k, f] : dist) {
        f /= total;
    }
    return dist;
}

std::vector<double> volume_fraction_node(const WalkSample& s, VolumeForm form)
{
    detail::require_estimable(s);
    std::vector<double> num(s.category_count(), 0.0);
    double den = 0.0;
    for (const Visit& v : s.visits) {
        double term = 0.0;
        switch (form) {
        case VolumeForm::uis: term = v.degree; break;
        case VolumeForm::weighted:
            if (!(v.weight > 0.0)) {
                detail::throw_zero_weight(v);
            }
            term = v.degree / v.weight;
            break;
        case VolumeForm::rw: term = 1.0; break;
        }
        num[v.category] += term;
        den += term;
    }
    if (!(den > 0.0)) {
        throw Error("sample has zero volume");
    }
    for (double& x : num) {
        x /= den;
    }
    return num;
}

std::vector<double> volume_fraction_star(const WalkSample& s, VolumeForm form)
{
    detail::require_estimable(s);
    if (!s.has_neighbor_counts) {
        throw Error("star estimator needs neighbor-category counts");
    }
    std::vector<double> num(s.category_count(), 0.0);
    double den = 0.0;
    for (const Visit& v : s.visits) {
        if (v.degree == 0) {
            throw Error("visit to node " + std::to_string(v.node) + " with degree 0");
        }
        // Divisor applied to every neighbor indicator of this visit.
        double divisor = 1.0;
        switch (form) {
        case VolumeForm::uis:
            den += v.degree;
            break;
        case VolumeForm::weighted:
            if (!(v.weight > 0.0)) {
                detail::throw_zero_weight(v);
            }
            divisor = v.weight;
            den += v.degree / v.weight;
            break;
        case VolumeForm::rw:
            divisor = v.degree;
            den += 1.0;
            break;
        }
        for (const auto& e : s.neighbor_counts(v)) {
            if (e.category >= num.size()) {
                throw Error("neighbor category out of range");
            }
            num[e.category] += e.count / divisor;
        }
    }
    for (double& x : num) {
        x /= den;
    }
    return num;
}

double nrmse(std::span<const double> estimates, double truth)
{
    if (truth == 0.0) {
        throw Error("NRMSE undefined for zero ground truth");
    }
    if (estimates.empty()) {
        throw Error("NRMSE needs at least one estimate");
    }
    double sq = 0.0;
    for (double e : estimates) {
        sq += (e - truth) * (e - truth);
    }
    return std::sqrt(sq / static_cast<double>(estimates.size())) / std::abs(truth);
}

} // namespace swrw
