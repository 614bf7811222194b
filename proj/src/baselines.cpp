#include "bairc/baselines.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bairc/shrr.hpp"

namespace bairc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_info(const PublicInfo& info, const char* who) {
    if (info.arm_count == 0) throw std::invalid_argument(std::string(who) + ": needs at least one arm");
}

void check_arm(ArmIndex arm, std::size_t k) {
    if (arm >= k) throw std::out_of_range("observed arm out of range");
}

} // namespace

void BaselineParams::validate() const {
    if (!(ucb_exploration > 0.0)) throw std::invalid_argument("ucb_exploration must be positive");
    if (!(atlucb_delta1 > 0.0 && atlucb_delta1 < 1.0)) {
        throw std::invalid_argument("atlucb_delta1 must lie in (0,1)");
    }
    if (!(atlucb_alpha > 0.0 && atlucb_alpha < 1.0)) {
        throw std::invalid_argument("atlucb_alpha must lie in (0,1)");
    }
    if (!(atlucb_epsilon >= 0.0)) throw std::invalid_argument("atlucb_epsilon must be nonnegative");
    if (dsh_initial_budget && *dsh_initial_budget == 0) {
        throw std::invalid_argument("dsh_initial_budget must be positive");
    }
}

nlohmann::json to_json(const BaselineParams& params) {
    nlohmann::json doc = {
        {"ucb_exploration", params.ucb_exploration},
        {"atlucb_delta1", params.atlucb_delta1},
        {"atlucb_alpha", params.atlucb_alpha},
        {"atlucb_epsilon", params.atlucb_epsilon},
    };
    if (params.dsh_initial_budget) doc["dsh_initial_budget"] = *params.dsh_initial_budget;
    return doc;
}

BaselineParams baseline_params_from_json(const nlohmann::json& doc) {
    BaselineParams p;
    if (doc.is_null()) return p;
    if (!doc.is_object()) throw std::invalid_argument("params must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) throw std::invalid_argument("params." + key + " must be a number");
        if (key == "ucb_exploration") p.ucb_exploration = value.get<double>();
        else if (key == "atlucb_delta1") p.atlucb_delta1 = value.get<double>();
        else if (key == "atlucb_alpha") p.atlucb_alpha = value.get<double>();
        else if (key == "atlucb_epsilon") p.atlucb_epsilon = value.get<double>();
        else if (key == "dsh_initial_budget") {
            if (!value.is_number_integer() || value.get<long long>() < 1) {
                throw std::invalid_argument("params.dsh_initial_budget must be a positive integer");
            }
            p.dsh_initial_budget = value.get<std::uint64_t>();
        } else {
            throw std::invalid_argument("unknown strategy parameter '" + key + "'");
        }
    }
    p.validate();
    return p;
}

ArmIndex EmpiricalStats::leader() const {
    ArmIndex best = 0;
    for (ArmIndex a = 1; a < pulls_.size(); ++a)
        if (mean(a) > mean(best)) best = a;
    return best;
}

void EmpiricalStats::reset() {
    std::fill(sums_.begin(), sums_.end(), 0.0);
    std::fill(pulls_.begin(), pulls_.end(), 0);
    total_ = 0;
}

// ---------------------------------------------------------------- uniform

UniformStrategy::UniformStrategy(const PublicInfo& info) : stats_(info.arm_count) {
    check_info(info, "uniform");
}

Selection UniformStrategy::select() {
    const ArmIndex arm = next_;
    next_ = (next_ + 1) % stats_.arm_count();
    return Selection::pull(arm);
}

void UniformStrategy::observe(ArmIndex arm, const Outcome& outcome) {
    check_arm(arm, stats_.arm_count());
    stats_.add(arm, outcome.reward);
}

// ---------------------------------------------------------------- UCB

UcbStrategy::UcbStrategy(const PublicInfo& info, const BaselineParams& params)
    : stats_(info.arm_count), exploration_(params.ucb_exploration) {
    check_info(info, "ucb");
    params.validate();
}

double UcbStrategy::index(ArmIndex arm) const {
    const std::uint64_t n = stats_.pulls(arm);
    if (n == 0) return kInf;
    const double t = static_cast<double>(stats_.total());
    return stats_.mean(arm) + std::sqrt(exploration_ * std::log(t) / static_cast<double>(n));
}

Selection UcbStrategy::select() {
    ArmIndex best = 0;
    double best_index = index(0);
    for (ArmIndex a = 1; a < stats_.arm_count(); ++a) {
        const double v = index(a);
        if (v > best_index) {
            best = a;
            best_index = v;
        }
    }
    return Selection::pull(best);
}

void UcbStrategy::observe(ArmIndex arm, const Outcome& outcome) {
    check_arm(arm, stats_.arm_count());
    stats_.add(arm, outcome.reward);
}

// ---------------------------------------------------------------- AT-LUCB

AtLucbStrategy::AtLucbStrategy(const PublicInfo& info, const BaselineParams& params)
    : stats_(info.arm_count),
      delta1_(params.atlucb_delta1),
      alpha_(params.atlucb_alpha),
      epsilon_(params.atlucb_epsilon) {
    check_info(info, "atlucb");
    params.validate();
}

double AtLucbStrategy::stage_delta(std::uint64_t stage) const {
    return delta1_ * std::pow(alpha_, static_cast<double>(stage - 1));
}

double AtLucbStrategy::deviation(std::uint64_t pulls, std::uint64_t round, double delta) const {
    if (pulls == 0) return kInf;
    const double k = static_cast<double>(stats_.arm_count());
    const double t = static_cast<double>(round);
    // ln(5 K t^4 / (4 delta)) expanded to avoid overflowing t^4.
    const double log_term = std::log(5.0 * k / (4.0 * delta)) + 4.0 * std::log(t);
    return std::sqrt(log_term / (2.0 * static_cast<double>(pulls)));
}

ArmIndex AtLucbStrategy::challenger(ArmIndex leader, double delta) const {
    std::optional<ArmIndex> best;
    double best_upper = -kInf;
    for (ArmIndex a = 0; a < stats_.arm_count(); ++a) {
        if (a == leader) continue;
        const double upper = stats_.mean(a) + deviation(stats_.pulls(a), round_, delta);
        if (!best || upper > best_upper) {
            best = a;
            best_upper = upper;
        }
    }
    return best.value_or(leader);
}

bool AtLucbStrategy::terminated(ArmIndex leader, std::uint64_t stage) const {
    if (stats_.arm_count() < 2) return false;
    const double delta = stage_delta(stage);
    const ArmIndex l = challenger(leader, delta);
    const double lower = stats_.mean(leader) - deviation(stats_.pulls(leader), round_, delta);
    const double upper = stats_.mean(l) + deviation(stats_.pulls(l), round_, delta);
    return upper - lower < epsilon_;
}

void AtLucbStrategy::start_round() {
    ++round_;
    const ArmIndex h = stats_.leader();
    if (terminated(h, stage_)) {
        // Termination is monotone in the stage (bounds only widen), so the next
        // non-terminated stage is found by doubling then bisection.
        std::uint64_t lo = stage_;  // terminated
        std::uint64_t step = 1;
        std::uint64_t hi = stage_ + step;
        while (terminated(h, hi)) {
            lo = hi;
            step *= 2;
            hi = stage_ + step;
        }
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (terminated(h, mid)) lo = mid;
            else hi = mid;
        }
        stage_ = hi;
    }
    queue_.push_back(h);
    if (stats_.arm_count() > 1) queue_.push_back(challenger(h, stage_delta(stage_)));
}

Selection AtLucbStrategy::select() {
    if (queue_.empty()) start_round();
    return Selection::pull(queue_.front());
}

void AtLucbStrategy::observe(ArmIndex arm, const Outcome& outcome) {
    check_arm(arm, stats_.arm_count());
    if (queue_.empty() || queue_.front() != arm) {
        throw std::logic_error("atlucb: observed arm differs from the selected arm");
    }
    queue_.pop_front();
    stats_.add(arm, outcome.reward);
}

// ---------------------------------------------------------------- doubling SH

DshStrategy::DshStrategy(const PublicInfo& info, const BaselineParams& params)
    : phase_count_(ceil_log2(info.arm_count)), overall_(info.arm_count), run_(info.arm_count) {
    check_info(info, "dsh");
    params.validate();
    const std::uint64_t k = info.arm_count;
    start_run(params.dsh_initial_budget.value_or(std::max<std::uint64_t>(k * phase_count_, 1)));
}

void DshStrategy::start_run(std::uint64_t budget) {
    budget_ = budget;
    run_.reset();
    survivors_.resize(overall_.arm_count());
    std::iota(survivors_.begin(), survivors_.end(), ArmIndex{0});
    phase_ = 0;
    start_phase();
}

void DshStrategy::start_phase() {
    phase_position_ = 0;
    per_arm_ = phase_count_ == 0
                   ? 1
                   : budget_ / (static_cast<std::uint64_t>(survivors_.size()) * phase_count_);
}

// Closes exhausted phases (and runs) until a pull is due.
void DshStrategy::advance() {
    while (phase_count_ > 0 && phase_position_ >= per_arm_ * survivors_.size()) {
        std::vector<double> means(run_.arm_count());
        for (ArmIndex a = 0; a < means.size(); ++a) means[a] = run_.mean(a);
        survivors_ = halve(survivors_, means);
        ++phase_;
        if (phase_ == phase_count_) {
            last_winner_ = survivors_.front();
            ++completed_runs_;
            start_run(budget_ * 2);
        } else {
            start_phase();
        }
    }
}

Selection DshStrategy::select() {
    if (phase_count_ == 0) return Selection::pull(0);
    advance();
    return Selection::pull(survivors_[phase_position_ % survivors_.size()]);
}

void DshStrategy::observe(ArmIndex arm, const Outcome& outcome) {
    check_arm(arm, overall_.arm_count());
    overall_.add(arm, outcome.reward);
    if (phase_count_ == 0) return;
    if (arm != survivors_[phase_position_ % survivors_.size()]) {
        throw std::logic_error("dsh: observed arm differs from the selected arm");
    }
    run_.add(arm, outcome.reward);
    ++phase_position_;
    advance();
}

ArmIndex DshStrategy::current_recommendation() const {
    if (phase_count_ == 0) return 0;
    return last_winner_.value_or(overall_.leader());
}

} // namespace bairc
