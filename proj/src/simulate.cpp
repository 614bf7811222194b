#include "bairc/simulate.hpp"

#include <cmath>
#include <numeric>

namespace bairc {

PublicInfo public_info(const InstanceSpec& instance) {
    return {instance.arm_count(), instance.resource_count(), instance.capacities()};
}

std::uint64_t safety_pull_cap(const InstanceSpec& instance) {
    const auto& caps = instance.capacities();
    const double total = std::accumulate(caps.begin(), caps.end(), 0.0);
    return static_cast<std::uint64_t>(std::ceil(10.0 * total / instance.min_mean_consumption()));
}

TrialRecord simulate(const InstanceSpec& instance, Strategy& strategy, Rng& rng) {
    const std::size_t resources = instance.resource_count();
    const auto& caps = instance.capacities();
    const ArmIndex best = instance.best_arm();
    const std::uint64_t cap = safety_pull_cap(instance);

    TrialRecord record;
    record.total_consumption.assign(resources, 0.0);
    std::vector<double> tentative(resources);
    Outcome outcome;

    for (;;) {
        const Selection next = strategy.select();
        if (next.finished) {
            record.recommended_arm = next.arm;
            break;
        }
        if (record.pulls >= cap) {
            throw NonTerminatingStrategy("strategy exceeded the safety cap of " +
                                         std::to_string(cap) + " pulls");
        }
        sample_outcome_into(instance, next.arm, rng, outcome);

        bool breach = false;
        for (std::size_t l = 0; l < resources; ++l) {
            tentative[l] = record.total_consumption[l] + outcome.consumptions[l];
            if (tentative[l] > caps[l]) breach = true;
        }
        if (breach) {
            record.recommended_arm = strategy.current_recommendation();
            record.breached = true;
            break;
        }
        record.total_consumption.swap(tentative);
        ++record.pulls;
        strategy.observe(next.arm, outcome);
    }
    if (record.recommended_arm >= instance.arm_count()) {
        throw std::logic_error("strategy recommended an arm outside [0, K)");
    }
    record.correct = record.recommended_arm == best;
    return record;
}

} // namespace bairc
