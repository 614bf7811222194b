#pragma once

#include <filesystem>

#include <json.hpp>

#include "bairc/instance.hpp"

namespace bairc {

// Instance file schema:
//   { "arm_count": K, "resource_count": L, "capacities": [C_1..C_L],
//     "rewards": [{"kind": "bernoulli"|"gaussian", "mean": r}, ...],
//     "consumptions": [[d_{1,1}..d_{L,1}], ...],   // one row per arm
//     "mode": "deterministic"|"bernoulli"|"coupled" }
nlohmann::json instance_to_json(const InstanceSpec& instance);
InstanceSpec instance_from_json(const nlohmann::json& doc);

InstanceSpec load_instance(const std::filesystem::path& path);
void save_instance(const InstanceSpec& instance, const std::filesystem::path& path);

} // namespace bairc
