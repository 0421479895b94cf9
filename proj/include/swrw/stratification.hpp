#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swrw {

/// Allocation objectives. `mean` is Neyman allocation, `max` equalizes the
/// per-category variances, `sum` minimizes their sum, `sizes` targets the
/// relative category sizes (equal split over relevant categories).
enum class Objective { proportional, mean, max, sum, sizes };

std::string_view to_string(Objective o) noexcept;
Objective parse_objective(std::string_view name);

struct Stratum {
    std::string label;
    double size = 0.0;
    std::optional<double> sigma; ///< unknown sigma is treated as 1
    bool relevant = true;
};

struct StratumSpec {
    std::vector<Stratum> strata;
    double budget = 0.0;

    double population() const;
    double relevant_population() const;
};

/// Real-valued allocation; n_i is an expected count, never rounded here.
struct AllocationPlan {
    Objective objective = Objective::proportional;
    std::vector<double> n;
    /// Category weight for WIS, proportional to n.
    std::vector<double> weight;
};

AllocationPlan proportional(const StratumSpec& spec);
AllocationPlan neyman(const StratumSpec& spec);
AllocationPlan max_precision(const StratumSpec& spec);
AllocationPlan sum_variances(const StratumSpec& spec);
AllocationPlan relative_sizes(const StratumSpec& spec);
AllocationPlan allocate(const StratumSpec& spec, Objective objective);

/// Value of the objective that `objective` minimizes, evaluated at allocation
/// `n` (one entry per stratum). Irrelevant strata are ignored. Used to check
/// optimality of plans against perturbed allocations.
double objective_value(const StratumSpec& spec, Objective objective, const std::vector<double>& n);

/// Gain of the optimal allocation over proportional allocation, computed
/// within the relevant strata.
double gain(const StratumSpec& spec, Objective objective);

/// N / (N - |C_irrelevant|) times gain() over the relevant strata.
double gain_with_irrelevant(const StratumSpec& spec, Objective objective);

/// Two-category WIS size estimator: X1 hits in C1 out of n draws with node
/// weights w1 (in C1) and w2 (in C2).
double wis_two_category_estimate(double x1, double n, double w1, double w2);

/// Delta-method variance of wis_two_category_estimate given the true f1.
double wis_two_category_variance(double f1, double n, double w1, double w2);

} // namespace swrw
