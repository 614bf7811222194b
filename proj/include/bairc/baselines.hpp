#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include <json.hpp>

#include "bairc/simulate.hpp"

namespace bairc {

struct BaselineParams {
    double ucb_exploration = 2.0;
    double atlucb_delta1 = 0.01;
    double atlucb_alpha = 0.99;
    double atlucb_epsilon = 0.0;
    std::optional<std::uint64_t> dsh_initial_budget;  // default K * ceil(log2 K)

    void validate() const;

    friend bool operator==(const BaselineParams&, const BaselineParams&) = default;
};

nlohmann::json to_json(const BaselineParams& params);
/// Missing keys keep their defaults; unknown keys are rejected.
BaselineParams baseline_params_from_json(const nlohmann::json& doc);

/// Per-arm reward sums and pull counts with the usual argmax conventions.
class EmpiricalStats {
public:
    explicit EmpiricalStats(std::size_t arm_count) : sums_(arm_count, 0.0), pulls_(arm_count, 0) {}

    void add(ArmIndex arm, double reward) {
        sums_[arm] += reward;
        ++pulls_[arm];
        ++total_;
    }
    double mean(ArmIndex arm) const {
        return pulls_[arm] == 0 ? 0.0 : sums_[arm] / static_cast<double>(pulls_[arm]);
    }
    std::uint64_t pulls(ArmIndex arm) const { return pulls_[arm]; }
    std::uint64_t total() const noexcept { return total_; }
    std::size_t arm_count() const noexcept { return pulls_.size(); }

    /// Largest empirical mean, ties to the smaller index; never-pulled arms count as 0.
    ArmIndex leader() const;
    void reset();

private:
    std::vector<double> sums_;
    std::vector<std::uint64_t> pulls_;
    std::uint64_t total_ = 0;
};

/// Cycles 0,1,..,K-1,0,..; never finishes on its own.
class UniformStrategy final : public Strategy {
public:
    explicit UniformStrategy(const PublicInfo& info);

    Selection select() override;
    void observe(ArmIndex arm, const Outcome& outcome) override;
    ArmIndex current_recommendation() const override { return stats_.leader(); }

private:
    EmpiricalStats stats_;
    ArmIndex next_ = 0;
};

/// UCB1-style: one pull per arm, then argmax of mean + sqrt(c ln t / n_k).
class UcbStrategy final : public Strategy {
public:
    UcbStrategy(const PublicInfo& info, const BaselineParams& params);

    Selection select() override;
    void observe(ArmIndex arm, const Outcome& outcome) override;
    ArmIndex current_recommendation() const override { return stats_.leader(); }

    double index(ArmIndex arm) const;

private:
    EmpiricalStats stats_;
    double exploration_;
};

/// Anytime LUCB (m = 1).
///
/// Stage s runs at confidence delta_s = delta_1 * alpha^(s-1). Every round
/// pulls the empirical leader and the challenger with the largest upper
/// bound; the stage advances while the leader's lower bound clears the
/// challenger's upper bound minus epsilon.
class AtLucbStrategy final : public Strategy {
public:
    AtLucbStrategy(const PublicInfo& info, const BaselineParams& params);

    Selection select() override;
    void observe(ArmIndex arm, const Outcome& outcome) override;
    ArmIndex current_recommendation() const override { return stats_.leader(); }

    std::uint64_t stage() const noexcept { return stage_; }
    double stage_delta(std::uint64_t stage) const;
    /// sqrt(ln(5 K t^4 / (4 delta)) / (2 n)), infinite for n = 0.
    double deviation(std::uint64_t pulls, std::uint64_t round, double delta) const;

private:
    ArmIndex challenger(ArmIndex leader, double delta) const;
    bool terminated(ArmIndex leader, std::uint64_t stage) const;
    void start_round();

    EmpiricalStats stats_;
    double delta1_;
    double alpha_;
    double epsilon_;
    std::uint64_t stage_ = 1;
    std::uint64_t round_ = 0;
    std::deque<ArmIndex> queue_;
};

/// Sequential Halving restarted with budgets B, 2B, 4B, ...
///
/// A run with budget B gives each of the |S| survivors floor(B / (|S| ceil(log2 K)))
/// pulls per phase and keeps the top half by means over that run. The
/// recommendation is the winner of the last completed run, or the overall
/// empirical leader before any run completes.
class DshStrategy final : public Strategy {
public:
    DshStrategy(const PublicInfo& info, const BaselineParams& params);

    Selection select() override;
    void observe(ArmIndex arm, const Outcome& outcome) override;
    ArmIndex current_recommendation() const override;

    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t completed_runs() const noexcept { return completed_runs_; }
    std::uint64_t pulls_per_arm() const noexcept { return per_arm_; }
    const std::vector<ArmIndex>& survivors() const noexcept { return survivors_; }

private:
    void start_run(std::uint64_t budget);
    void start_phase();
    void advance();

    std::size_t phase_count_;
    EmpiricalStats overall_;
    EmpiricalStats run_;
    std::uint64_t budget_ = 0;
    std::uint64_t completed_runs_ = 0;
    std::optional<ArmIndex> last_winner_;
    std::vector<ArmIndex> survivors_;
    std::size_t phase_ = 0;
    std::uint64_t per_arm_ = 0;
    std::uint64_t phase_position_ = 0;
};

} // namespace bairc
