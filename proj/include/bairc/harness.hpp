#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bairc/baselines.hpp"
#include "bairc/simulate.hpp"

namespace bairc {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class StrategyKind { shrr, uniform, ucb, atlucb, dsh };

std::string_view to_string(StrategyKind kind);
/// Throws ConfigError for names outside {shrr, uniform, ucb, atlucb, dsh}.
StrategyKind parse_strategy_kind(std::string_view name);

std::unique_ptr<Strategy> make_strategy(StrategyKind kind, const PublicInfo& info,
                                        const BaselineParams& params = {});

struct StrategyConfig {
    StrategyKind kind = StrategyKind::shrr;
    BaselineParams params;

    friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

struct ExperimentConfig {
    std::optional<InstanceSpec> instance;  // inline instance, or
    std::string instance_path;             // path to an instance file
    std::vector<StrategyConfig> strategies;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::string output_path;  // empty: caller decides

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig read_config(const std::filesystem::path& path);
void write_config(const ExperimentConfig& config, const std::filesystem::path& path);

struct AggregateResult {
    std::string strategy;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double failure_rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double mean_pulls = 0.0;
    std::vector<double> mean_consumption;
    std::uint64_t master_seed = 0;
    std::uint64_t breaches = 0;  // not part of the CSV
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion, clamped to [0,1].
Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = 1.959963984540054);

/// 0 means std::thread::hardware_concurrency().
std::size_t resolve_threads(std::size_t requested);

using StrategyFactory = std::function<std::unique_ptr<Strategy>(const PublicInfo&)>;

/// Runs `trials` independent simulations; trial i uses child_seed(master_seed, i).
/// The returned records are in trial order and do not depend on `threads`.
std::vector<TrialRecord> run_trials(const InstanceSpec& instance,
                                    const StrategyFactory& factory,
                                    std::uint64_t trials,
                                    std::uint64_t master_seed,
                                    std::size_t threads = 0);

/// Index-ordered fold of trial records.
AggregateResult aggregate(std::string strategy,
                          const std::vector<TrialRecord>& records,
                          std::size_t resource_count,
                          std::uint64_t master_seed);

std::vector<AggregateResult> run_experiment(const ExperimentConfig& config, std::size_t threads = 0);

/// Header row plus one row per result; doubles in shortest round-trip form.
void write_results_csv(std::ostream& out, const std::vector<AggregateResult>& results);
void write_results(const std::vector<AggregateResult>& results, const std::filesystem::path& path);

struct LemmaCheck {
    double empirical_prob = 0.0;
    double bound = 0.0;
    bool passes = false;
};

/// Monte Carlo check of P(mean of N Bern(d) draws > f(d)) <= exp(-N/3).
/// Passes when the empirical frequency is at most bound + 3 sqrt(bound / repetitions).
LemmaCheck mc_check_consumption_lemma(double d, std::uint64_t draws, std::uint64_t repetitions, Rng& rng);

struct FigureRow {
    double d = 0.0;
    bool stochastic = false;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double log_failure_rate = 0.0;  // -inf when no trial failed
};

/// SH-RR on K = 2, L = 1, C = 2, Bernoulli rewards (0.5, 0.4) and d_1 = d_2 = d,
/// once with deterministic and once with Bern(d) consumption per value of d.
std::vector<FigureRow> figure_compare(const std::vector<double>& dvals,
                                      std::uint64_t trials,
                                      std::uint64_t seed,
                                      std::size_t threads = 0);

InstanceSpec figure_instance(double d, ConsumptionMode mode);

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

} // namespace bairc
