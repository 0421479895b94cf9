#pragma once

#include "swrw/walk.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace swrw {

/// Which variant of the volume estimators to apply to a sample.
///  - uis: nodes drawn uniformly (ratio estimator normalized by vol(S))
///  - weighted: nodes drawn with probability proportional to the recorded weight
///  - rw: recorded weight proportional to degree; reduces to plain visit counts
enum class VolumeForm { uis, weighted, rw };

/// Form matching how the sample was collected.
VolumeForm default_volume_form(Sampler s) noexcept;

/// Hansen-Hurwitz estimate of sum_v x(v): (1/n) sum_{v in S} x(v)/pi(v).
/// `x` and `pi` are indexed by node id; pi must be normalized.
double hh_total(const WalkSample& s, std::span<const double> x, std::span<const double> pi);

/// Re-weighted mean using the recorded (unnormalized) weights:
/// sum x(v)/w(v) / sum 1/w(v). `x` is indexed by node id.
double hh_mean(const WalkSample& s, std::span<const double> x);

/// As hh_mean, with the value taken from each visit by `value(const Visit&)`.
template <class ValueOf>
double hh_mean_by(const WalkSample& s, ValueOf&& value);

/// Estimated fraction of nodes in each category; categories never visited get 0.
std::vector<double> category_size_fractions(const WalkSample& s);

/// Estimated degree distribution (degree -> fraction of nodes).
std::map<std::uint32_t, double> degree_distribution(const WalkSample& s);

/// Node-sampling estimate of vol(C)/vol(V) for every category.
std::vector<double> volume_fraction_node(const WalkSample& s, VolumeForm form);
inline std::vector<double> volume_fraction_node(const WalkSample& s)
{
    return volume_fraction_node(s, default_volume_form(s.sampler));
}

/// Star-sampling estimate of vol(C)/vol(V): uses the categories of all
/// neighbors of every visited node.
std::vector<double> volume_fraction_star(const WalkSample& s, VolumeForm form);
inline std::vector<double> volume_fraction_star(const WalkSample& s)
{
    return volume_fraction_star(s, default_volume_form(s.sampler));
}

/// sqrt(mean((estimate - truth)^2)) / |truth|.
double nrmse(std::span<const double> estimates, double truth);

/// Per-replication estimates of one quantity against its ground truth.
struct EstimateSeries {
    std::string label;
    std::vector<double> estimates;
    double truth = 0.0;

    double nrmse() const { return swrw::nrmse(estimates, truth); }
};

namespace detail {
void require_estimable(const WalkSample& s);
[[noreturn]] void throw_zero_weight(const Visit& v);
} // namespace detail

template <class ValueOf>
double hh_mean_by(const WalkSample& s, ValueOf&& value)
{
    detail::require_estimable(s);
    double num = 0.0;
    double den = 0.0;
    for (const Visit& v : s.visits) {
        if (!(v.weight > 0.0)) {
            detail::throw_zero_weight(v);
        }
        num += value(v) / v.weight;
        den += 1.0 / v.weight;
    }
    return num / den;
}

} // namespace swrw
