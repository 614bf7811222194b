#pragma once

#include <string_view>

#include "bairc/instance.hpp"

namespace bairc {

enum class RewardProfile { one_group, trap, polynomial, geometric };
enum class ConsumptionMatch { high_high, high_low, mixture };

RewardProfile parse_reward_profile(std::string_view text);
ConsumptionMatch parse_consumption_match(std::string_view text);

/// Mean rewards of the synthetic profiles (arm 0 is the best arm):
///   one_group  0.9, then 0.8 for every other arm;
///   trap       0.9, 0.8 for arms 2..ceil(K/8), 0.1 beyond;
///   polynomial 0.9, then 0.9 (1 - sqrt(i/K)) for arm i >= 2 (the last arm has mean 0);
///   geometric  0.9 (1/9)^((i-1)/(K-1)).
std::vector<double> synthetic_rewards(std::size_t arm_count, RewardProfile profile);

/// Half-split synthetic instance with Bernoulli rewards and every capacity
/// equal to `capacity`. high_high gives the first K/2 arms d = 0.9 and the
/// rest 0.1 on every resource, high_low the reverse, mixture (L = 2 only)
/// uses high_low on resource 1 and high_high on resource 2.
InstanceSpec gen_synthetic(std::size_t arm_count,
                           std::size_t resource_count,
                           RewardProfile profile,
                           ConsumptionMatch match,
                           ConsumptionMode mode,
                           double capacity);

} // namespace bairc
