#include <doctest.h>

#include "bairc/baselines.hpp"
#include "bairc/shrr.hpp"
#include "bairc/simulate.hpp"

using namespace bairc;

namespace {

InstanceSpec two_arm_det(double d, double capacity) {
    return InstanceSpec({capacity}, {{RewardKind::bernoulli, 0.9}, {RewardKind::bernoulli, 0.1}}, {{d}, {d}},
                        ConsumptionMode::deterministic);
}

class ImmediateFinish final : public Strategy {
public:
    Selection select() override {
        if (done_) throw std::logic_error("select after finish");
        done_ = true;
        return Selection::finish(0);
    }
    void observe(ArmIndex, const Outcome&) override {}
    ArmIndex current_recommendation() const override { return 0; }

private:
    bool done_ = false;
};

} // namespace

TEST_CASE("SH-RR on K=2, d=1, C=10 pulls five times per arm") {
    const auto inst = two_arm_det(1.0, 10.0);
    ShrrStrategy shrr(public_info(inst));
    Rng rng(1);
    const TrialRecord rec = simulate(inst, shrr, rng);
    CHECK(rec.pulls == 10);
    CHECK_FALSE(rec.breached);
    CHECK(rec.total_consumption == std::vector<double>{10.0});
    REQUIRE(shrr.state().history.size() == 1);
    CHECK(shrr.state().history[0].pulls == std::vector<std::uint64_t>{5, 5});
}

TEST_CASE("uniform baseline breaches on the fourth pull with C=3") {
    const auto inst = two_arm_det(1.0, 3.0);
    UniformStrategy uniform(public_info(inst));
    Rng rng(3);
    const TrialRecord rec = simulate(inst, uniform, rng);
    CHECK(rec.pulls == 3);
    CHECK(rec.breached);
    CHECK(rec.total_consumption == std::vector<double>{3.0});
    // the strategy saw exactly three outcomes; its recommendation is the returned arm
    CHECK(rec.recommended_arm == uniform.current_recommendation());
}

TEST_CASE("single-arm instance finishes without pulls") {
    InstanceSpec inst({1.0}, {{RewardKind::bernoulli, 0.3}}, {{0.5}}, ConsumptionMode::deterministic);
    ImmediateFinish strategy;
    Rng rng(0);
    const TrialRecord rec = simulate(inst, strategy, rng);
    CHECK(rec.pulls == 0);
    CHECK(rec.recommended_arm == 0);
    CHECK(rec.correct);
    CHECK_FALSE(rec.breached);

    ShrrStrategy shrr(public_info(inst));
    const TrialRecord rec2 = simulate(inst, shrr, rng);
    CHECK(rec2.pulls == 0);
    CHECK(rec2.correct);
}

TEST_CASE("equal seeds give identical records") {
    InstanceSpec inst({7.5, 4.0},
                      {{RewardKind::bernoulli, 0.6}, {RewardKind::gaussian, 0.5}, {RewardKind::bernoulli, 0.4}},
                      {{0.3, 0.2}, {0.5, 0.1}, {0.9, 0.4}}, ConsumptionMode::independent_bernoulli);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng a(seed), b(seed);
        UcbStrategy s1(public_info(inst), {}), s2(public_info(inst), {});
        CHECK(simulate(inst, s1, a) == simulate(inst, s2, b));
    }
}

TEST_CASE("records stay within capacity under breach semantics") {
    Rng gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 2 + trial % 5;
        const std::size_t l = 1 + trial % 3;
        std::vector<RewardModel> rewards;
        std::vector<std::vector<double>> d(k, std::vector<double>(l));
        for (std::size_t a = 0; a < k; ++a) {
            rewards.push_back({RewardKind::bernoulli, unit(gen)});
            for (auto& x : d[a]) x = 0.05 + 0.95 * unit(gen);
        }
        std::vector<double> caps(l);
        for (auto& c : caps) c = 0.5 + 20.0 * unit(gen);
        const auto mode = static_cast<ConsumptionMode>(trial % 3);
        InstanceSpec inst(caps, rewards, d, mode);
        UniformStrategy uniform(public_info(inst));
        Rng rng(child_seed(77, static_cast<std::uint64_t>(trial)));
        const TrialRecord rec = simulate(inst, uniform, rng);
        for (std::size_t i = 0; i < l; ++i) ok &= rec.total_consumption[i] <= caps[i];
        ok &= rec.breached;
    }
    CHECK(ok);
}

TEST_CASE("safety cap stops strategies that never finish") {
    // C = 0.5 with Bern(0.5) consumption: the cap is 10 pulls and ten
    // consecutive zero draws (probability 2^-10) reach it.
    InstanceSpec inst({0.5}, {{RewardKind::bernoulli, 0.5}}, {{0.5}}, ConsumptionMode::independent_bernoulli);
    CHECK(safety_pull_cap(inst) == 10);
    int thrown = 0;
    for (std::uint64_t seed = 0; seed < 20000; ++seed) {
        UniformStrategy uniform(public_info(inst));
        Rng rng(seed);
        try {
            simulate(inst, uniform, rng);
        } catch (const NonTerminatingStrategy&) {
            ++thrown;
        }
    }
    CHECK(thrown > 0);
    CHECK(thrown < 100);
}
