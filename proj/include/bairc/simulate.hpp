#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bairc/instance.hpp"

namespace bairc {

/// What a strategy asks for next: pull an arm, or stop and recommend one.
struct Selection {
    ArmIndex arm = 0;
    bool finished = false;

    static Selection pull(ArmIndex arm) { return {arm, false}; }
    static Selection finish(ArmIndex arm) { return {arm, true}; }

    friend bool operator==(const Selection&, const Selection&) = default;
};

/// Public data a strategy may see. Latent means are never passed to strategies.
struct PublicInfo {
    std::size_t arm_count = 0;
    std::size_t resource_count = 0;
    std::vector<double> capacities;
};

PublicInfo public_info(const InstanceSpec& instance);

/// Non-anticipatory strategy driven by simulate().
///
/// select() returns the next arm or a final recommendation; observe() delivers
/// the outcome of the arm returned by the preceding select(). Calling select()
/// once the strategy has finished throws std::logic_error.
class Strategy {
public:
    virtual ~Strategy() = default;

    virtual Selection select() = 0;
    virtual void observe(ArmIndex arm, const Outcome& outcome) = 0;
    /// Arm that would be returned if the run were stopped now.
    virtual ArmIndex current_recommendation() const = 0;
};

struct TrialRecord {
    ArmIndex recommended_arm = 0;
    std::uint64_t pulls = 0;
    std::vector<double> total_consumption;
    bool correct = false;
    bool breached = false;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

class NonTerminatingStrategy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 10 * sum_l C_l / min_{l,k} d_{l,k}, the pull count after which a run is aborted.
std::uint64_t safety_pull_cap(const InstanceSpec& instance);

/// Runs one trial of `strategy` on `instance`.
///
/// A pull that would push any cumulative consumption strictly above its
/// capacity ends the run as breached: the outcome is discarded, never shown
/// to the strategy, and the recommendation held before that pull is returned.
TrialRecord simulate(const InstanceSpec& instance, Strategy& strategy, Rng& rng);

} // namespace bairc
