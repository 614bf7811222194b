#include "bairc/synthetic.hpp"

#include <cmath>
#include <string>

namespace bairc {

RewardProfile parse_reward_profile(std::string_view text) {
    if (text == "onegroup") return RewardProfile::one_group;
    if (text == "trap") return RewardProfile::trap;
    if (text == "poly" || text == "polynomial") return RewardProfile::polynomial;
    if (text == "geom" || text == "geometric") return RewardProfile::geometric;
    throw std::invalid_argument("unknown reward profile '" + std::string(text) + "'");
}

ConsumptionMatch parse_consumption_match(std::string_view text) {
    if (text == "hmh" || text == "HmH") return ConsumptionMatch::high_high;
    if (text == "hml" || text == "HmL") return ConsumptionMatch::high_low;
    if (text == "m" || text == "M") return ConsumptionMatch::mixture;
    throw std::invalid_argument("unknown consumption match '" + std::string(text) + "'");
}

std::vector<double> synthetic_rewards(std::size_t arm_count, RewardProfile profile) {
    if (arm_count == 0) throw std::invalid_argument("synthetic instance needs K >= 1");
    const double k = static_cast<double>(arm_count);
    std::vector<double> r(arm_count);
    r[0] = 0.9;
    const std::size_t trap_end = (arm_count + 7) / 8;  // ceil(K/8): 32 of 256
    for (std::size_t i = 2; i <= arm_count; ++i) {
        double& ri = r[i - 1];
        switch (profile) {
        case RewardProfile::one_group: ri = 0.8; break;
        case RewardProfile::trap: ri = i <= trap_end ? 0.8 : 0.1; break;
        case RewardProfile::polynomial: ri = 0.9 * (1.0 - std::sqrt(static_cast<double>(i) / k)); break;
        case RewardProfile::geometric:
            ri = 0.9 * std::pow(1.0 / 9.0, static_cast<double>(i - 1) / (k - 1.0));
            break;
        }
    }
    return r;
}

InstanceSpec gen_synthetic(std::size_t arm_count,
                           std::size_t resource_count,
                           RewardProfile profile,
                           ConsumptionMatch match,
                           ConsumptionMode mode,
                           double capacity) {
    if (resource_count == 0) throw std::invalid_argument("synthetic instance needs L >= 1");
    if (arm_count % 2 != 0) throw std::invalid_argument("half-split consumption needs an even K");
    if (match == ConsumptionMatch::mixture && resource_count != 2) {
        throw std::invalid_argument("the mixture pattern needs L = 2");
    }
    const auto means = synthetic_rewards(arm_count, profile);
    std::vector<RewardModel> rewards;
    for (double m : means) rewards.push_back({RewardKind::bernoulli, m});

    const std::size_t half = arm_count / 2;
    std::vector<std::vector<double>> consumptions(arm_count, std::vector<double>(resource_count));
    for (std::size_t a = 0; a < arm_count; ++a) {
        const bool first_half = a < half;
        for (std::size_t l = 0; l < resource_count; ++l) {
            bool high_high = match == ConsumptionMatch::high_high;
            if (match == ConsumptionMatch::mixture) high_high = l == 1;
            consumptions[a][l] = (first_half == high_high) ? 0.9 : 0.1;
        }
    }
    return InstanceSpec(std::vector<double>(resource_count, capacity), std::move(rewards),
                        std::move(consumptions), mode);
}

} // namespace bairc
