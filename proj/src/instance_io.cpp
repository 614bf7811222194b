#include "bairc/instance_io.hpp"

#include <fstream>

namespace bairc {

namespace {

const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw InvalidInstance(std::string("instance: missing field '") + key + "'");
    return *it;
}

std::size_t require_count(const nlohmann::json& doc, const char* key) {
    const auto& v = require(doc, key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw InvalidInstance(std::string("instance: '") + key + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

} // namespace

nlohmann::json instance_to_json(const InstanceSpec& instance) {
    nlohmann::json rewards = nlohmann::json::array();
    for (const RewardModel& r : instance.rewards()) {
        rewards.push_back({{"kind", std::string(to_string(r.kind))}, {"mean", r.mean}});
    }
    return {
        {"arm_count", instance.arm_count()},
        {"resource_count", instance.resource_count()},
        {"capacities", instance.capacities()},
        {"rewards", rewards},
        {"consumptions", instance.consumptions()},
        {"mode", std::string(to_string(instance.mode()))},
    };
}

InstanceSpec instance_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InvalidInstance("instance: document must be an object");
    const std::size_t k = require_count(doc, "arm_count");
    const std::size_t l = require_count(doc, "resource_count");
    try {
        auto capacities = require(doc, "capacities").get<std::vector<double>>();
        if (capacities.size() != l) {
            throw InvalidInstance("instance: 'capacities' has " + std::to_string(capacities.size()) +
                                  " entries, resource_count is " + std::to_string(l));
        }
        const auto& reward_docs = require(doc, "rewards");
        if (!reward_docs.is_array() || reward_docs.size() != k) {
            throw InvalidInstance("instance: 'rewards' must be an array of arm_count entries");
        }
        std::vector<RewardModel> rewards;
        rewards.reserve(k);
        for (std::size_t a = 0; a < k; ++a) {
            const auto& r = reward_docs[a];
            if (!r.is_object()) {
                throw InvalidInstance("instance: rewards[" + std::to_string(a) + "] must be an object");
            }
            rewards.push_back({parse_reward_kind(require(r, "kind").get<std::string>()),
                               require(r, "mean").get<double>()});
        }
        auto consumptions = require(doc, "consumptions").get<std::vector<std::vector<double>>>();
        const auto mode = parse_consumption_mode(require(doc, "mode").get<std::string>());
        return InstanceSpec(std::move(capacities), std::move(rewards), std::move(consumptions), mode);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInstance(std::string("instance: ") + e.what());
    }
}

InstanceSpec load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInstance("cannot open instance file '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInstance("instance file '" + path.string() + "': " + e.what());
    }
    return instance_from_json(doc);
}

void save_instance(const InstanceSpec& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file '" + path.string() + "'");
    out << instance_to_json(instance).dump(2) << '\n';
}

} // namespace bairc
