#include "bairc/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bairc {

namespace {

const double kE2 = std::exp(2.0);
const double kEm2 = std::exp(-2.0);

void check_pair(std::span<const double> rewards, std::span<const double> consumptions) {
    if (rewards.size() != consumptions.size()) {
        throw std::invalid_argument("rewards and consumptions differ in length");
    }
    for (double d : consumptions) {
        if (!(d > 0.0)) throw std::invalid_argument("mean consumptions must be positive");
    }
}

// Arm indices ordered by reward, largest first, ties by smaller index.
std::vector<std::size_t> reward_order(std::span<const double> rewards) {
    std::vector<std::size_t> order(rewards.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rewards[a] > rewards[b]; });
    return order;
}

// max_{k>=2} prefix_k / Delta_k^2 over a sequence already in the wanted order.
double max_prefix_ratio(std::span<const double> sequence, std::span<const double> gap) {
    double prefix = sequence[0];
    double best = 0.0;
    for (std::size_t k = 1; k < sequence.size(); ++k) {
        prefix += sequence[k];
        best = std::max(best, prefix / (gap[k] * gap[k]));
    }
    return best;
}

void check_lb_params(std::span<const double> base_rewards,
                     const std::vector<std::vector<double>>& sorted_consumptions,
                     ArmIndex flip,
                     const std::vector<double>& capacities) {
    const std::size_t k = base_rewards.size();
    if (k == 0) throw std::invalid_argument("lower-bound family needs at least one arm");
    if (base_rewards[0] != 0.5) throw std::invalid_argument("lower-bound family needs r_1 = 1/2");
    for (std::size_t a = 1; a < k; ++a) {
        if (base_rewards[a] > base_rewards[a - 1]) {
            throw std::invalid_argument("lower-bound rewards must be non-increasing");
        }
    }
    if (base_rewards[k - 1] < 0.25) throw std::invalid_argument("lower-bound rewards must be >= 1/4");
    if (flip >= k) throw std::invalid_argument("flip index out of range");
    if (sorted_consumptions.empty() || sorted_consumptions.size() != capacities.size()) {
        throw std::invalid_argument("need one sorted consumption row per capacity");
    }
    for (const auto& row : sorted_consumptions) {
        if (row.size() != k) throw std::invalid_argument("consumption row length must equal K");
        for (std::size_t a = 0; a < k; ++a) {
            if (!(row[a] > 0.0 && row[a] <= 1.0)) {
                throw std::invalid_argument("consumptions must lie in (0,1]");
            }
            if (a > 0 && row[a] > row[a - 1]) {
                throw std::invalid_argument("consumption rows must be non-increasing");
            }
        }
    }
}

std::vector<std::vector<double>> swapped_consumptions(
    const std::vector<std::vector<double>>& sorted_consumptions, std::size_t arm_count) {
    std::vector<std::vector<double>> rows(arm_count, std::vector<double>(sorted_consumptions.size()));
    for (std::size_t l = 0; l < sorted_consumptions.size(); ++l) {
        for (std::size_t a = 0; a < arm_count; ++a) rows[a][l] = sorted_consumptions[l][a];
        if (arm_count >= 2) std::swap(rows[0][l], rows[1][l]);
    }
    return rows;
}

} // namespace

std::vector<double> gaps(std::span<const double> rewards) {
    if (rewards.size() < 2) throw std::invalid_argument("gaps need at least two arms");
    std::vector<double> sorted = sorted_descending(rewards);
    if (sorted[0] == sorted[1]) throw NoUniqueBestArm("no unique best arm");
    std::vector<double> out(sorted.size());
    for (std::size_t k = 1; k < sorted.size(); ++k) out[k] = sorted[0] - sorted[k];
    out[0] = out[1];
    return out;
}

std::vector<double> sorted_descending(std::span<const double> values) {
    std::vector<double> out(values.begin(), values.end());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double h2_det(std::span<const double> rewards, std::span<const double> consumptions) {
    check_pair(rewards, consumptions);
    const auto gap = gaps(rewards);
    return max_prefix_ratio(sorted_descending(consumptions), gap);
}

double f_effective(double d) {
    if (!(d > 0.0 && d <= 1.0)) throw std::invalid_argument("f is defined on (0,1]");
    if (d >= kEm2) return kE2 * d;
    return 2.0 / (-std::log(d));
}

double h2_sto(std::span<const double> rewards, std::span<const double> consumptions) {
    check_pair(rewards, consumptions);
    const auto gap = gaps(rewards);
    auto effective = sorted_descending(consumptions);
    for (double& d : effective) d = f_effective(d);
    return max_prefix_ratio(effective, gap);
}

double h1_det(std::span<const double> rewards, std::span<const double> consumptions) {
    check_pair(rewards, consumptions);
    const auto gap = gaps(rewards);
    const auto d = sorted_descending(consumptions);
    double total = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) total += d[k] / (gap[k] * gap[k]);
    return total;
}

TildeH tilde_h_det(std::span<const double> rewards, std::span<const double> consumptions) {
    check_pair(rewards, consumptions);
    const auto gap = gaps(rewards);
    const auto order = reward_order(rewards);
    std::vector<double> d(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) d[k] = consumptions[order[k]];

    TildeH out;
    for (std::size_t k = 0; k < d.size(); ++k) out.h1 += d[k] / (gap[k] * gap[k]);
    out.h2 = max_prefix_ratio(d, gap);
    return out;
}

double gamma_rate(std::span<const double> capacities, std::span<const double> hardness) {
    if (capacities.size() != hardness.size() || capacities.empty()) {
        throw std::invalid_argument("gamma: capacities and hardness values differ in length");
    }
    double rate = capacities[0] / hardness[0];
    for (std::size_t l = 1; l < capacities.size(); ++l) rate = std::min(rate, capacities[l] / hardness[l]);
    return rate;
}

double thm1_bound_value(std::size_t arm_count, double gamma_det) {
    if (arm_count <= 1) return 0.0;
    const double phases = static_cast<double>(ceil_log2(arm_count));
    return phases * static_cast<double>(arm_count) * std::exp(-gamma_det / (4.0 * phases));
}

double thm2_bound_value(std::size_t arm_count, std::size_t resource_count, double gamma_sto) {
    if (arm_count <= 1) return 0.0;
    const double k = static_cast<double>(arm_count);
    const double phases = static_cast<double>(ceil_log2(arm_count));
    return 7.0 * static_cast<double>(resource_count) * k * std::log2(k) *
           std::exp(-gamma_sto / (8.0 * phases));
}

namespace {

std::vector<double> per_resource(const InstanceSpec& instance,
                                 double (*measure)(std::span<const double>, std::span<const double>)) {
    const auto rewards = instance.reward_means();
    std::vector<double> out(instance.resource_count());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = measure(rewards, instance.consumption_column(l));
    return out;
}

} // namespace

double thm1_bound(const InstanceSpec& instance) {
    if (instance.mode() != ConsumptionMode::deterministic) {
        throw std::invalid_argument("the deterministic bound needs deterministic consumption");
    }
    if (instance.arm_count() == 1) return 0.0;
    return thm1_bound_value(instance.arm_count(),
                            gamma_rate(instance.capacities(), per_resource(instance, &h2_det)));
}

double thm2_bound(const InstanceSpec& instance) {
    if (instance.arm_count() == 1) return 0.0;
    return thm2_bound_value(instance.arm_count(), instance.resource_count(),
                            gamma_rate(instance.capacities(), per_resource(instance, &h2_sto)));
}

ComplexityReport complexity_report(const InstanceSpec& instance) {
    ComplexityReport report;
    report.arm_count = instance.arm_count();
    report.resource_count = instance.resource_count();
    for (std::size_t l = 0; l < instance.resource_count(); ++l) {
        report.sorted_consumptions.push_back(sorted_descending(instance.consumption_column(l)));
    }
    if (instance.arm_count() == 1) {
        if (instance.mode() == ConsumptionMode::deterministic) report.thm1_bound = 0.0;
        return report;
    }
    const auto rewards = instance.reward_means();
    report.gaps = gaps(rewards);
    for (std::size_t l = 0; l < instance.resource_count(); ++l) {
        const auto d = instance.consumption_column(l);
        report.h2_det.push_back(h2_det(rewards, d));
        report.h2_sto.push_back(h2_sto(rewards, d));
        report.h1_det.push_back(h1_det(rewards, d));
        const TildeH tilde = tilde_h_det(rewards, d);
        report.tilde_h1_det.push_back(tilde.h1);
        report.tilde_h2_det.push_back(tilde.h2);
    }
    report.gamma_det = gamma_rate(instance.capacities(), report.h2_det);
    report.gamma_sto = gamma_rate(instance.capacities(), report.h2_sto);
    if (instance.mode() == ConsumptionMode::deterministic) {
        report.thm1_bound = thm1_bound_value(report.arm_count, *report.gamma_det);
    }
    report.thm2_bound = thm2_bound_value(report.arm_count, report.resource_count, *report.gamma_sto);
    return report;
}

nlohmann::json to_json(const ComplexityReport& report) {
    auto optional = [](const std::optional<double>& v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    return {
        {"arm_count", report.arm_count},
        {"resource_count", report.resource_count},
        {"gaps", report.gaps},
        {"sorted_consumptions", report.sorted_consumptions},
        {"h2_det", report.h2_det},
        {"h2_sto", report.h2_sto},
        {"h1_det", report.h1_det},
        {"tilde_h1_det", report.tilde_h1_det},
        {"tilde_h2_det", report.tilde_h2_det},
        {"gamma_det", optional(report.gamma_det)},
        {"gamma_sto", optional(report.gamma_sto)},
        {"thm1_bound", optional(report.thm1_bound)},
        {"thm2_bound", report.thm2_bound},
    };
}

InstanceSpec build_det_lb_instance(std::span<const double> base_rewards,
                                   const std::vector<std::vector<double>>& sorted_consumptions,
                                   ArmIndex flip,
                                   std::vector<double> capacities) {
    check_lb_params(base_rewards, sorted_consumptions, flip, capacities);
    std::vector<RewardModel> rewards;
    for (std::size_t a = 0; a < base_rewards.size(); ++a) {
        const double r = a == flip ? 1.0 - base_rewards[a] : base_rewards[a];
        rewards.push_back({RewardKind::bernoulli, r});
    }
    return InstanceSpec(std::move(capacities), std::move(rewards),
                        swapped_consumptions(sorted_consumptions, base_rewards.size()),
                        ConsumptionMode::deterministic);
}

InstanceSpec build_sto_lb_instance(std::span<const double> base_rewards,
                                   const std::vector<std::vector<double>>& sorted_consumptions,
                                   ArmIndex flip,
                                   std::vector<double> capacities) {
    check_lb_params(base_rewards, sorted_consumptions, flip, capacities);
    std::vector<RewardModel> rewards;
    for (std::size_t a = 0; a < base_rewards.size(); ++a) {
        const double r = a == flip ? 1.0 - base_rewards[a] : base_rewards[a];
        rewards.push_back({RewardKind::gaussian, r});
    }
    return InstanceSpec(std::move(capacities), std::move(rewards),
                        swapped_consumptions(sorted_consumptions, base_rewards.size()),
                        ConsumptionMode::independent_bernoulli);
}

InstanceSpec build_counterexample(std::size_t arm_count, double capacity) {
    if (arm_count < 2) throw std::invalid_argument("counterexample needs K >= 2");
    const int k_total = static_cast<int>(arm_count);
    std::vector<RewardModel> rewards;
    std::vector<std::vector<double>> consumptions;
    for (int k = 1; k <= k_total; ++k) {
        const int exponent = k == 1 ? -(k_total - 2) : -(k_total - k);
        consumptions.push_back({std::ldexp(1.0, exponent)});
        const double r = k == 1 ? 0.5 : 0.5 - std::exp2(static_cast<double>(k - k_total - 4) / 2.0);
        rewards.push_back({RewardKind::bernoulli, r});
    }
    return InstanceSpec({capacity}, std::move(rewards), std::move(consumptions),
                        ConsumptionMode::deterministic);
}

} // namespace bairc
