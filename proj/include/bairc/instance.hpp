#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bairc {

// Arms and resources are 0-based in the C++ API. Arm 0 is the first arm of an
// instance file; "best arm" always means the unique arm with the largest mean.
using ArmIndex = std::size_t;

using Rng = std::mt19937_64;

class InvalidInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class RewardKind { bernoulli, gaussian };

// deterministic: D_l = d_{l,k} exactly.
// independent_bernoulli: each D_l ~ Bern(d_{l,k}), independent of the reward and each other.
// coupled_uniform: one U ~ Uniform[0,1] drives R = 1{U <= r_k} and D_l = 1{U <= d_{l,k}}.
enum class ConsumptionMode { deterministic, independent_bernoulli, coupled_uniform };

struct RewardModel {
    RewardKind kind = RewardKind::bernoulli;
    double mean = 0.0;

    friend bool operator==(const RewardModel&, const RewardModel&) = default;
};

struct Outcome {
    double reward = 0.0;
    std::vector<double> consumptions;
};

std::string_view to_string(RewardKind kind);
std::string_view to_string(ConsumptionMode mode);
RewardKind parse_reward_kind(std::string_view text);
ConsumptionMode parse_consumption_mode(std::string_view text);

/// Latent description of a resource-constrained best-arm problem.
///
/// Holds K reward laws, a K x L matrix of mean consumptions d_{l,k} in (0,1],
/// L positive capacities and the consumption mode. The constructor validates
/// every invariant and throws InvalidInstance otherwise; a constructed
/// instance is immutable and safe to share across threads.
class InstanceSpec {
public:
    InstanceSpec(std::vector<double> capacities,
                 std::vector<RewardModel> rewards,
                 std::vector<std::vector<double>> consumptions,
                 ConsumptionMode mode);

    std::size_t arm_count() const noexcept { return rewards_.size(); }
    std::size_t resource_count() const noexcept { return capacities_.size(); }

    const std::vector<double>& capacities() const noexcept { return capacities_; }
    const std::vector<RewardModel>& rewards() const noexcept { return rewards_; }
    /// Row k holds d_{1,k}..d_{L,k}.
    const std::vector<std::vector<double>>& consumptions() const noexcept { return consumptions_; }
    ConsumptionMode mode() const noexcept { return mode_; }

    double reward_mean(ArmIndex arm) const { return rewards_.at(arm).mean; }
    double mean_consumption(ArmIndex arm, std::size_t resource) const {
        return consumptions_.at(arm).at(resource);
    }

    std::vector<double> reward_means() const;
    /// Column l of the consumption matrix: d_{l,1}..d_{l,K}.
    std::vector<double> consumption_column(std::size_t resource) const;

    double min_mean_consumption() const noexcept;

    bool has_unique_best() const noexcept;
    /// First arm attaining the largest mean reward.
    ArmIndex best_arm() const noexcept;

    friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;

private:
    std::vector<double> capacities_;
    std::vector<RewardModel> rewards_;
    std::vector<std::vector<double>> consumptions_;
    ConsumptionMode mode_;
};

/// Draws one pull of `arm` into `out`, reusing its storage.
void sample_outcome_into(const InstanceSpec& instance, ArmIndex arm, Rng& rng, Outcome& out);

Outcome sample_outcome(const InstanceSpec& instance, ArmIndex arm, Rng& rng);

/// Outcome of a coupled-uniform pull for a given uniform draw.
Outcome coupled_outcome(const InstanceSpec& instance, ArmIndex arm, double uniform);

/// Per-trial seed derived from a master seed with a splitmix64 finalizer.
constexpr std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    std::uint64_t z = master_seed + trial_index * 0x9E3779B97F4A7C15ULL;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// ceil(log2 n) for n >= 1; the number of halving phases over n arms.
constexpr std::size_t ceil_log2(std::size_t n) noexcept {
    std::size_t phases = 0;
    std::size_t span = 1;
    while (span < n) {
        span <<= 1;
        ++phases;
    }
    return phases;
}

} // namespace bairc
