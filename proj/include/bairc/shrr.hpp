#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "bairc/simulate.hpp"

namespace bairc {

/// Bookkeeping of one finished halving phase.
struct PhaseSummary {
    std::vector<ArmIndex> survivors;   // arms played in the phase
    std::vector<double> ration;        // Ration^(q)_l at phase start
    std::vector<double> consumed;      // I^(q)_l at phase end
    std::vector<std::uint64_t> pulls;  // per-survivor pulls within the phase
};

struct ShrrState {
    std::size_t phase = 0;
    std::size_t phase_count = 0;  // ceil(log2 K)
    std::vector<ArmIndex> surviving;
    std::vector<double> base_ration;  // C_l / ceil(log2 K)
    std::vector<double> ration;
    std::vector<double> phase_consumed;
    std::uint64_t step = 1;  // global round-robin counter t
    std::vector<double> cum_reward;
    std::vector<std::uint64_t> cum_pulls;
    std::vector<std::uint64_t> phase_pulls;
    bool finished = false;
    std::vector<PhaseSummary> history;
};

nlohmann::json to_json(const ShrrState& state);

/// Survivor k^(q)_{a(t)} with a(t) = t mod |S| mapped into 1..|S| (residue 0 -> |S|).
ArmIndex round_robin_pick(std::span<const ArmIndex> survivors, std::uint64_t step);

/// The ceil(n/2) survivors with the largest means, ties to the smaller arm
/// index, returned in ascending arm order. `means` is indexed by arm.
std::vector<ArmIndex> halve(std::span<const ArmIndex> survivors, std::span<const double> means);

/// Sequential Halving with Resource Rationing.
///
/// Runs ceil(log2 K) phases. Each phase pulls its survivors round-robin while
/// every resource satisfies I_l <= Ration_l - 1, then keeps the top half by
/// cumulative empirical mean and carries unused ration into the next phase.
/// Total consumption never exceeds C_l, whatever the realised outcomes.
class ShrrStrategy final : public Strategy {
public:
    explicit ShrrStrategy(const PublicInfo& info);

    Selection select() override;
    void observe(ArmIndex arm, const Outcome& outcome) override;
    ArmIndex current_recommendation() const override;

    const ShrrState& state() const noexcept { return state_; }
    /// Cumulative empirical mean of `arm`, zero for never-pulled arms.
    double empirical_mean(ArmIndex arm) const;

private:
    bool phase_may_continue() const;
    void close_phase();
    void settle();

    ShrrState state_;
    bool pending_ = false;
    bool finish_reported_ = false;
    ArmIndex pending_arm_ = 0;
};

} // namespace bairc
