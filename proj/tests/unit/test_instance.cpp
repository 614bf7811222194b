#include <doctest.h>

#include <set>

#include "bairc/instance.hpp"
#include "bairc/instance_io.hpp"

using namespace bairc;

namespace {

InstanceSpec one_arm_det(double d) {
    return InstanceSpec({5.0}, {{RewardKind::bernoulli, 0.5}}, {{d}}, ConsumptionMode::deterministic);
}

InstanceSpec random_instance(Rng& rng, ConsumptionMode mode) {
    std::uniform_int_distribution<std::size_t> karms(1, 6), lres(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t k = karms(rng), l = lres(rng);
    std::vector<RewardModel> rewards;
    std::vector<std::vector<double>> d(k, std::vector<double>(l));
    for (std::size_t a = 0; a < k; ++a) {
        const bool gauss = mode != ConsumptionMode::coupled_uniform && unit(rng) < 0.3;
        rewards.push_back({gauss ? RewardKind::gaussian : RewardKind::bernoulli, unit(rng)});
        for (auto& x : d[a]) x = 1.0 - unit(rng);  // (0,1]
    }
    return InstanceSpec(std::vector<double>(l, 10.0), rewards, d, mode);
}

} // namespace

TEST_CASE("instance validation") {
    using M = ConsumptionMode;
    CHECK_THROWS_AS(InstanceSpec({}, {{RewardKind::bernoulli, 0.5}}, {{}}, M::deterministic), InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({1.0}, {}, {}, M::deterministic), InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({0.0}, {{RewardKind::bernoulli, 0.5}}, {{0.5}}, M::deterministic),
                    InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({1.0}, {{RewardKind::bernoulli, 0.5}}, {{0.0}}, M::deterministic),
                    InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({1.0}, {{RewardKind::bernoulli, 0.5}}, {{1.5}}, M::deterministic),
                    InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({1.0}, {{RewardKind::bernoulli, 1.5}}, {{0.5}}, M::deterministic),
                    InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({1.0}, {{RewardKind::gaussian, 0.5}}, {{0.5}}, M::coupled_uniform),
                    InvalidInstance);
    CHECK_THROWS_AS(InstanceSpec({1.0, 2.0}, {{RewardKind::bernoulli, 0.5}}, {{0.5}}, M::deterministic),
                    InvalidInstance);
    CHECK_NOTHROW(InstanceSpec({1.0}, {{RewardKind::gaussian, -3.0}}, {{1.0}}, M::independent_bernoulli));
}

TEST_CASE("best arm lookup") {
    InstanceSpec inst({1.0},
                      {{RewardKind::bernoulli, 0.2}, {RewardKind::bernoulli, 0.7}, {RewardKind::bernoulli, 0.7}},
                      {{0.5}, {0.5}, {0.5}}, ConsumptionMode::deterministic);
    CHECK(inst.best_arm() == 1);
    CHECK_FALSE(inst.has_unique_best());
}

TEST_CASE("sample_outcome examples") {
    Rng rng(7);
    SUBCASE("deterministic consumption is exact") {
        const auto inst = one_arm_det(0.3);
        for (int i = 0; i < 100; ++i) CHECK(sample_outcome(inst, 0, rng).consumptions == std::vector<double>{0.3});
    }
    SUBCASE("coupled draw U = 0.7 with r = 0.5, d = 0.9") {
        InstanceSpec inst({1.0}, {{RewardKind::bernoulli, 0.5}}, {{0.9}}, ConsumptionMode::coupled_uniform);
        const Outcome o = coupled_outcome(inst, 0, 0.7);
        CHECK(o.reward == 0.0);
        CHECK(o.consumptions == std::vector<double>{1.0});
    }
    SUBCASE("Bernoulli reward with mean one") {
        InstanceSpec inst({1.0}, {{RewardKind::bernoulli, 1.0}}, {{0.4}}, ConsumptionMode::independent_bernoulli);
        for (int i = 0; i < 1000; ++i) CHECK(sample_outcome(inst, 0, rng).reward == 1.0);
    }
    SUBCASE("arm out of range") {
        const auto inst = one_arm_det(0.3);
        CHECK_THROWS_AS(sample_outcome(inst, 1, rng), std::out_of_range);
    }
}

TEST_CASE("outcome invariants hold on 1e5 samples per mode") {
    Rng rng(2024);
    for (auto mode : {ConsumptionMode::deterministic, ConsumptionMode::independent_bernoulli,
                      ConsumptionMode::coupled_uniform}) {
        CAPTURE(to_string(mode));
        bool ok = true;
        for (int s = 0; s < 100; ++s) {
            const InstanceSpec inst = random_instance(rng, mode);
            Outcome o;
            for (int i = 0; i < 1000; ++i) {
                const ArmIndex arm = static_cast<ArmIndex>(i) % inst.arm_count();
                sample_outcome_into(inst, arm, rng, o);
                ok &= o.consumptions.size() == inst.resource_count();
                for (std::size_t l = 0; l < o.consumptions.size(); ++l) {
                    const double c = o.consumptions[l];
                    ok &= c >= 0.0 && c <= 1.0;
                    if (mode == ConsumptionMode::deterministic) ok &= c == inst.mean_consumption(arm, l);
                    else ok &= c == 0.0 || c == 1.0;
                }
                if (inst.rewards()[arm].kind == RewardKind::bernoulli) ok &= o.reward == 0.0 || o.reward == 1.0;
                // comonotone coupling: r <= d and R = 1 force D = 1
                if (mode == ConsumptionMode::coupled_uniform && o.reward == 1.0) {
                    for (std::size_t l = 0; l < o.consumptions.size(); ++l) {
                        if (inst.reward_mean(arm) <= inst.mean_consumption(arm, l)) ok &= o.consumptions[l] == 1.0;
                    }
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("empirical frequencies match the declared means") {
    Rng rng(99);
    InstanceSpec inst({1.0}, {{RewardKind::bernoulli, 0.3}}, {{0.6}}, ConsumptionMode::independent_bernoulli);
    double reward = 0.0, used = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const Outcome o = sample_outcome(inst, 0, rng);
        reward += o.reward;
        used += o.consumptions[0];
    }
    CHECK(reward / n == doctest::Approx(0.3).epsilon(0.01));
    CHECK(used / n == doctest::Approx(0.6).epsilon(0.01));

    InstanceSpec gauss({1.0}, {{RewardKind::gaussian, 1.5}}, {{0.6}}, ConsumptionMode::deterministic);
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = sample_outcome(gauss, 0, rng).reward;
        sum += r;
        sq += r * r;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(1.5).epsilon(0.01));
    CHECK(sq / n - mean * mean == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("child_seed") {
    CHECK(child_seed(123, 45) == child_seed(123, 45));
    CHECK(child_seed(0, 0) == 0);
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(child_seed(42, i));
    CHECK(seen.size() == 1000);
    static_assert(child_seed(0, 0) == 0);
}

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(256) == 8);
}

TEST_CASE("instance json round trip and schema errors") {
    Rng rng(5);
    for (auto mode : {ConsumptionMode::deterministic, ConsumptionMode::independent_bernoulli,
                      ConsumptionMode::coupled_uniform}) {
        const InstanceSpec inst = random_instance(rng, mode);
        CHECK(instance_from_json(instance_to_json(inst)) == inst);
    }
    auto doc = instance_to_json(one_arm_det(0.5));
    doc.erase("capacities");
    CHECK_THROWS_WITH_AS(instance_from_json(doc), doctest::Contains("capacities"), InvalidInstance);
    doc = instance_to_json(one_arm_det(0.5));
    doc["mode"] = "adversarial";
    CHECK_THROWS_AS(instance_from_json(doc), InvalidInstance);
    doc = instance_to_json(one_arm_det(0.5));
    doc["arm_count"] = 2;
    CHECK_THROWS_AS(instance_from_json(doc), InvalidInstance);
    CHECK_THROWS_WITH_AS(load_instance("/nonexistent/instance.json"), doctest::Contains("/nonexistent/instance.json"),
                         InvalidInstance);
}
