#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "bairc/instance.hpp"

namespace bairc {

class NoUniqueBestArm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// All functions below take per-arm rewards r_k and per-arm consumptions
// d_{l,k} of a single resource, in the same (arbitrary) arm order. Logarithms
// are natural unless the name says log2.

/// Gaps in reward-sorted order: Delta_1 = Delta_2 = r_(1) - r_(2), Delta_k = r_(1) - r_(k).
/// Throws NoUniqueBestArm on a tied maximum and std::invalid_argument for K < 2.
std::vector<double> gaps(std::span<const double> rewards);

/// Consumptions sorted non-increasing.
std::vector<double> sorted_descending(std::span<const double> values);

/// max_{k>=2} (sum_{j<=k} d_(j)) / Delta_k^2 with d sorted non-increasing.
double h2_det(std::span<const double> rewards, std::span<const double> consumptions);

/// Effective consumption: e^2 d on [e^-2, 1], 2 / ln(1/d) on (0, e^-2).
double f_effective(double d);

/// h2_det with f(d_(j)) in place of d_(j).
double h2_sto(std::span<const double> rewards, std::span<const double> consumptions);

/// sum_k d_(k) / Delta_(k)^2, sorted consumptions against reward-sorted gaps.
double h1_det(std::span<const double> rewards, std::span<const double> consumptions);

struct TildeH {
    double h1 = 0.0;
    double h2 = 0.0;
};

/// The unsorted refinements: each arm keeps its own consumption, arms taken
/// in reward order (ties by index).
TildeH tilde_h_det(std::span<const double> rewards, std::span<const double> consumptions);

/// min_l C_l / H_l.
double gamma_rate(std::span<const double> capacities, std::span<const double> hardness);

/// ceil(log2 K) K exp(-gamma_det / (4 ceil(log2 K))); 0 for K = 1.
double thm1_bound_value(std::size_t arm_count, double gamma_det);
/// 7 L K log2(K) exp(-gamma_sto / (8 ceil(log2 K))); 0 for K = 1.
double thm2_bound_value(std::size_t arm_count, std::size_t resource_count, double gamma_sto);

/// Deterministic-consumption upper bound for SH-RR; throws for other modes.
double thm1_bound(const InstanceSpec& instance);
/// Stochastic-consumption upper bound for SH-RR (valid for every mode).
double thm2_bound(const InstanceSpec& instance);

struct ComplexityReport {
    std::size_t arm_count = 0;
    std::size_t resource_count = 0;
    std::vector<double> gaps;
    std::vector<std::vector<double>> sorted_consumptions;  // per resource
    std::vector<double> h2_det;
    std::vector<double> h2_sto;
    std::vector<double> h1_det;
    std::vector<double> tilde_h1_det;
    std::vector<double> tilde_h2_det;
    std::optional<double> gamma_det;  // unset for K = 1
    std::optional<double> gamma_sto;
    std::optional<double> thm1_bound;  // unset unless consumption is deterministic
    double thm2_bound = 0.0;
};

ComplexityReport complexity_report(const InstanceSpec& instance);
nlohmann::json to_json(const ComplexityReport& report);

/// Lower-bound family for deterministic consumption.
///
/// `base_rewards` must satisfy 1/2 = r_1 >= r_2 >= ... >= r_K >= 1/4 and each
/// row of `sorted_consumptions` (one per resource) must be non-increasing in
/// (0,1]. Arm `flip` gets mean 1 - r_flip; the first two arms swap their
/// consumptions so the runner-up is the most expensive arm.
InstanceSpec build_det_lb_instance(std::span<const double> base_rewards,
                                   const std::vector<std::vector<double>>& sorted_consumptions,
                                   ArmIndex flip,
                                   std::vector<double> capacities);

/// Stochastic counterpart: unit-variance Gaussian rewards, Bern(d) consumptions.
InstanceSpec build_sto_lb_instance(std::span<const double> base_rewards,
                                   const std::vector<std::vector<double>>& sorted_consumptions,
                                   ArmIndex flip,
                                   std::vector<double> capacities);

/// Single-resource family on which the unsorted refinements fail:
/// d_1 = 2^-(K-2), d_k = 2^-(K-k), r_1 = 1/2, r_k = 1/2 - 2^((k-K-4)/2).
InstanceSpec build_counterexample(std::size_t arm_count, double capacity);

} // namespace bairc
