#include "bairc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bairc {

namespace {

// 53-bit uniform on [0,1); independent of the standard library's distribution code.
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0,1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void check_arm(const InstanceSpec& instance, ArmIndex arm) {
    if (arm >= instance.arm_count()) {
        throw std::out_of_range("arm " + std::to_string(arm) + " out of range for K=" +
                                std::to_string(instance.arm_count()));
    }
}

} // namespace

std::string_view to_string(RewardKind kind) {
    return kind == RewardKind::bernoulli ? "bernoulli" : "gaussian";
}

std::string_view to_string(ConsumptionMode mode) {
    switch (mode) {
    case ConsumptionMode::deterministic: return "deterministic";
    case ConsumptionMode::independent_bernoulli: return "bernoulli";
    case ConsumptionMode::coupled_uniform: return "coupled";
    }
    return "deterministic";
}

RewardKind parse_reward_kind(std::string_view text) {
    if (text == "bernoulli") return RewardKind::bernoulli;
    if (text == "gaussian") return RewardKind::gaussian;
    throw InvalidInstance("unknown reward kind '" + std::string(text) + "'");
}

ConsumptionMode parse_consumption_mode(std::string_view text) {
    if (text == "deterministic") return ConsumptionMode::deterministic;
    if (text == "bernoulli") return ConsumptionMode::independent_bernoulli;
    if (text == "coupled") return ConsumptionMode::coupled_uniform;
    throw InvalidInstance("unknown consumption mode '" + std::string(text) + "'");
}

InstanceSpec::InstanceSpec(std::vector<double> capacities,
                           std::vector<RewardModel> rewards,
                           std::vector<std::vector<double>> consumptions,
                           ConsumptionMode mode)
    : capacities_(std::move(capacities)),
      rewards_(std::move(rewards)),
      consumptions_(std::move(consumptions)),
      mode_(mode) {
    const std::size_t k = rewards_.size();
    const std::size_t l = capacities_.size();
    if (k == 0) throw InvalidInstance("instance needs at least one arm");
    if (l == 0) throw InvalidInstance("instance needs at least one resource");
    for (std::size_t i = 0; i < l; ++i) {
        if (!(capacities_[i] > 0.0) || !std::isfinite(capacities_[i])) {
            throw InvalidInstance("capacity " + std::to_string(i) + " must be positive and finite");
        }
    }
    if (consumptions_.size() != k) {
        throw InvalidInstance("consumption matrix has " + std::to_string(consumptions_.size()) +
                              " rows, expected K=" + std::to_string(k));
    }
    for (std::size_t a = 0; a < k; ++a) {
        if (consumptions_[a].size() != l) {
            throw InvalidInstance("consumption row " + std::to_string(a) + " has " +
                                  std::to_string(consumptions_[a].size()) + " entries, expected L=" +
                                  std::to_string(l));
        }
        for (double d : consumptions_[a]) {
            if (!(d > 0.0 && d <= 1.0)) {
                throw InvalidInstance("mean consumption of arm " + std::to_string(a) +
                                      " must lie in (0,1]");
            }
        }
        const RewardModel& r = rewards_[a];
        if (!std::isfinite(r.mean)) {
            throw InvalidInstance("reward mean of arm " + std::to_string(a) + " is not finite");
        }
        if (r.kind == RewardKind::bernoulli && (r.mean < 0.0 || r.mean > 1.0)) {
            throw InvalidInstance("Bernoulli reward mean of arm " + std::to_string(a) +
                                  " must lie in [0,1]");
        }
        if (mode_ == ConsumptionMode::coupled_uniform && r.kind != RewardKind::bernoulli) {
            throw InvalidInstance("coupled consumption requires Bernoulli rewards");
        }
    }
}

std::vector<double> InstanceSpec::reward_means() const {
    std::vector<double> means(rewards_.size());
    std::transform(rewards_.begin(), rewards_.end(), means.begin(),
                   [](const RewardModel& r) { return r.mean; });
    return means;
}

std::vector<double> InstanceSpec::consumption_column(std::size_t resource) const {
    if (resource >= resource_count()) throw std::out_of_range("resource index out of range");
    std::vector<double> column(arm_count());
    for (std::size_t a = 0; a < arm_count(); ++a) column[a] = consumptions_[a][resource];
    return column;
}

double InstanceSpec::min_mean_consumption() const noexcept {
    double lo = 1.0;
    for (const auto& row : consumptions_)
        for (double d : row) lo = std::min(lo, d);
    return lo;
}

ArmIndex InstanceSpec::best_arm() const noexcept {
    ArmIndex best = 0;
    for (ArmIndex a = 1; a < rewards_.size(); ++a)
        if (rewards_[a].mean > rewards_[best].mean) best = a;
    return best;
}

bool InstanceSpec::has_unique_best() const noexcept {
    const ArmIndex best = best_arm();
    for (ArmIndex a = 0; a < rewards_.size(); ++a)
        if (a != best && rewards_[a].mean == rewards_[best].mean) return false;
    return true;
}

Outcome coupled_outcome(const InstanceSpec& instance, ArmIndex arm, double uniform) {
    check_arm(instance, arm);
    Outcome out;
    out.reward = uniform <= instance.reward_mean(arm) ? 1.0 : 0.0;
    out.consumptions.resize(instance.resource_count());
    for (std::size_t l = 0; l < instance.resource_count(); ++l)
        out.consumptions[l] = uniform <= instance.mean_consumption(arm, l) ? 1.0 : 0.0;
    return out;
}

void sample_outcome_into(const InstanceSpec& instance, ArmIndex arm, Rng& rng, Outcome& out) {
    check_arm(instance, arm);
    const std::size_t resources = instance.resource_count();
    const auto& row = instance.consumptions()[arm];
    const RewardModel& reward = instance.rewards()[arm];
    out.consumptions.resize(resources);

    if (instance.mode() == ConsumptionMode::coupled_uniform) {
        const double u = uniform01(rng);
        out.reward = u <= reward.mean ? 1.0 : 0.0;
        for (std::size_t l = 0; l < resources; ++l) out.consumptions[l] = u <= row[l] ? 1.0 : 0.0;
        return;
    }

    if (reward.kind == RewardKind::bernoulli) {
        out.reward = uniform01(rng) < reward.mean ? 1.0 : 0.0;
    } else {
        out.reward = reward.mean + standard_normal(rng);
    }

    if (instance.mode() == ConsumptionMode::deterministic) {
        std::copy(row.begin(), row.end(), out.consumptions.begin());
    } else {
        for (std::size_t l = 0; l < resources; ++l)
            out.consumptions[l] = uniform01(rng) < row[l] ? 1.0 : 0.0;
    }
}

Outcome sample_outcome(const InstanceSpec& instance, ArmIndex arm, Rng& rng) {
    Outcome out;
    sample_outcome_into(instance, arm, rng, out);
    return out;
}

} // namespace bairc
