#include "bairc/shrr.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bairc {

nlohmann::json to_json(const ShrrState& state) {
    nlohmann::json history = nlohmann::json::array();
    for (const PhaseSummary& p : state.history) {
        history.push_back({{"survivors", p.survivors},
                           {"ration", p.ration},
                           {"consumed", p.consumed},
                           {"pulls", p.pulls}});
    }
    return {
        {"phase", state.phase},
        {"phase_count", state.phase_count},
        {"surviving", state.surviving},
        {"base_ration", state.base_ration},
        {"ration", state.ration},
        {"phase_consumed", state.phase_consumed},
        {"step", state.step},
        {"cum_reward", state.cum_reward},
        {"cum_pulls", state.cum_pulls},
        {"phase_pulls", state.phase_pulls},
        {"finished", state.finished},
        {"history", history},
    };
}

ArmIndex round_robin_pick(std::span<const ArmIndex> survivors, std::uint64_t step) {
    if (survivors.empty()) throw std::invalid_argument("round_robin_pick: no survivors");
    const std::uint64_t n = survivors.size();
    const std::uint64_t residue = step % n;
    const std::uint64_t position = residue == 0 ? n : residue;  // 1-based a(t)
    return survivors[position - 1];
}

std::vector<ArmIndex> halve(std::span<const ArmIndex> survivors, std::span<const double> means) {
    std::vector<ArmIndex> ranked(survivors.begin(), survivors.end());
    for (ArmIndex arm : ranked) {
        if (arm >= means.size()) throw std::out_of_range("halve: no mean for arm");
    }
    const std::size_t keep = (ranked.size() + 1) / 2;
    std::stable_sort(ranked.begin(), ranked.end(), [&](ArmIndex a, ArmIndex b) {
        if (means[a] != means[b]) return means[a] > means[b];
        return a < b;
    });
    ranked.resize(keep);
    std::sort(ranked.begin(), ranked.end());
    return ranked;
}

ShrrStrategy::ShrrStrategy(const PublicInfo& info) {
    const std::size_t k = info.arm_count;
    if (k == 0) throw std::invalid_argument("SH-RR needs at least one arm");
    if (info.capacities.size() != info.resource_count || info.resource_count == 0) {
        throw std::invalid_argument("SH-RR: capacities must have resource_count > 0 entries");
    }
    state_.surviving.resize(k);
    std::iota(state_.surviving.begin(), state_.surviving.end(), ArmIndex{0});
    state_.cum_reward.assign(k, 0.0);
    state_.cum_pulls.assign(k, 0);
    state_.phase_pulls.assign(k, 0);
    state_.phase_count = ceil_log2(k);
    state_.phase_consumed.assign(info.resource_count, 0.0);
    if (state_.phase_count == 0) {
        // A single arm needs no phases: ceil(log2 1) = 0 would divide by zero below.
        state_.base_ration.assign(info.resource_count, 0.0);
        state_.ration = state_.base_ration;
        state_.finished = true;
        return;
    }
    state_.base_ration.resize(info.resource_count);
    for (std::size_t l = 0; l < info.resource_count; ++l) {
        state_.base_ration[l] = info.capacities[l] / static_cast<double>(state_.phase_count);
    }
    state_.ration = state_.base_ration;
    settle();
}

double ShrrStrategy::empirical_mean(ArmIndex arm) const {
    const std::uint64_t n = state_.cum_pulls.at(arm);
    return state_.cum_reward[arm] / static_cast<double>(std::max<std::uint64_t>(n, 1));
}

bool ShrrStrategy::phase_may_continue() const {
    for (std::size_t l = 0; l < state_.ration.size(); ++l) {
        if (!(state_.phase_consumed[l] <= state_.ration[l] - 1.0)) return false;
    }
    return true;
}

void ShrrStrategy::close_phase() {
    PhaseSummary summary;
    summary.survivors = state_.surviving;
    summary.ration = state_.ration;
    summary.consumed = state_.phase_consumed;
    for (ArmIndex arm : state_.surviving) summary.pulls.push_back(state_.phase_pulls[arm]);
    state_.history.push_back(std::move(summary));

    std::vector<double> means(state_.cum_pulls.size());
    for (ArmIndex arm = 0; arm < means.size(); ++arm) means[arm] = empirical_mean(arm);
    state_.surviving = halve(state_.surviving, means);

    for (std::size_t l = 0; l < state_.ration.size(); ++l) {
        state_.ration[l] = state_.base_ration[l] + (state_.ration[l] - state_.phase_consumed[l]);
        state_.phase_consumed[l] = 0.0;
    }
    std::fill(state_.phase_pulls.begin(), state_.phase_pulls.end(), 0);
    ++state_.phase;
    if (state_.phase == state_.phase_count) state_.finished = true;
}

void ShrrStrategy::settle() {
    while (!state_.finished && !phase_may_continue()) close_phase();
}

Selection ShrrStrategy::select() {
    if (state_.finished) {
        if (finish_reported_) throw std::logic_error("SH-RR: select() after the run finished");
        finish_reported_ = true;
        return Selection::finish(state_.surviving.front());
    }
    if (pending_) throw std::logic_error("SH-RR: select() called twice without observe()");
    pending_arm_ = round_robin_pick(state_.surviving, state_.step);
    pending_ = true;
    return Selection::pull(pending_arm_);
}

void ShrrStrategy::observe(ArmIndex arm, const Outcome& outcome) {
    if (state_.finished || !pending_) throw std::logic_error("SH-RR: observe() without a pending pull");
    if (arm != pending_arm_) throw std::logic_error("SH-RR: observed arm differs from the selected arm");
    if (outcome.consumptions.size() != state_.phase_consumed.size()) {
        throw std::invalid_argument("SH-RR: outcome has the wrong number of resources");
    }
    pending_ = false;
    for (std::size_t l = 0; l < state_.phase_consumed.size(); ++l) {
        state_.phase_consumed[l] += outcome.consumptions[l];
    }
    state_.cum_reward[arm] += outcome.reward;
    ++state_.cum_pulls[arm];
    ++state_.phase_pulls[arm];
    ++state_.step;
    settle();
}

ArmIndex ShrrStrategy::current_recommendation() const {
    if (state_.finished) return state_.surviving.front();
    ArmIndex leader = state_.surviving.front();
    for (ArmIndex arm : state_.surviving) {
        if (empirical_mean(arm) > empirical_mean(leader)) leader = arm;
    }
    return leader;
}

} // namespace bairc
