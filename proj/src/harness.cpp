#include "bairc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "bairc/complexity.hpp"
#include "bairc/instance_io.hpp"
#include "bairc/shrr.hpp"

namespace bairc {

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::shrr: return "shrr";
    case StrategyKind::uniform: return "uniform";
    case StrategyKind::ucb: return "ucb";
    case StrategyKind::atlucb: return "atlucb";
    case StrategyKind::dsh: return "dsh";
    }
    return "shrr";
}

StrategyKind parse_strategy_kind(std::string_view name) {
    for (StrategyKind k : {StrategyKind::shrr, StrategyKind::uniform, StrategyKind::ucb,
                           StrategyKind::atlucb, StrategyKind::dsh}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown strategy '" + std::string(name) +
                      "' (expected shrr, uniform, ucb, atlucb or dsh)");
}

std::unique_ptr<Strategy> make_strategy(StrategyKind kind, const PublicInfo& info,
                                        const BaselineParams& params) {
    switch (kind) {
    case StrategyKind::shrr: return std::make_unique<ShrrStrategy>(info);
    case StrategyKind::uniform: return std::make_unique<UniformStrategy>(info);
    case StrategyKind::ucb: return std::make_unique<UcbStrategy>(info, params);
    case StrategyKind::atlucb: return std::make_unique<AtLucbStrategy>(info, params);
    case StrategyKind::dsh: return std::make_unique<DshStrategy>(info, params);
    }
    throw std::logic_error("unhandled strategy kind");
}

// ---------------------------------------------------------------- config

nlohmann::json to_json(const ExperimentConfig& config) {
    nlohmann::json strategies = nlohmann::json::array();
    for (const StrategyConfig& s : config.strategies) {
        strategies.push_back({{"name", std::string(to_string(s.kind))}, {"params", to_json(s.params)}});
    }
    nlohmann::json doc = {
        {"strategies", strategies},
        {"trials", config.trials},
        {"master_seed", config.master_seed},
        {"output_path", config.output_path},
    };
    if (config.instance) doc["instance"] = instance_to_json(*config.instance);
    else doc["instance_path"] = config.instance_path;
    return doc;
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config: document must be an object");
    ExperimentConfig config;

    const bool has_inline = doc.contains("instance");
    const bool has_path = doc.contains("instance_path");
    if (has_inline == has_path) {
        throw ConfigError("config: exactly one of 'instance' or 'instance_path' is required");
    }
    if (has_inline) {
        try {
            config.instance = instance_from_json(doc.at("instance"));
        } catch (const InvalidInstance& e) {
            throw ConfigError(std::string("config: field 'instance': ") + e.what());
        }
    } else {
        if (!doc.at("instance_path").is_string()) throw ConfigError("config: field 'instance_path' must be a string");
        config.instance_path = doc.at("instance_path").get<std::string>();
    }

    if (!doc.contains("strategies")) throw ConfigError("config: missing field 'strategies'");
    const auto& strategies = doc.at("strategies");
    if (!strategies.is_array() || strategies.empty()) {
        throw ConfigError("config: field 'strategies' must be a non-empty array");
    }
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        const auto& s = strategies[i];
        const std::string where = "config: strategies[" + std::to_string(i) + "]";
        if (!s.is_object() || !s.contains("name") || !s.at("name").is_string()) {
            throw ConfigError(where + " needs a string field 'name'");
        }
        StrategyConfig sc;
        sc.kind = parse_strategy_kind(s.at("name").get<std::string>());
        try {
            sc.params = baseline_params_from_json(s.value("params", nlohmann::json(nullptr)));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + ".params: " + e.what());
        }
        config.strategies.push_back(sc);
    }

    if (!doc.contains("trials")) throw ConfigError("config: missing field 'trials'");
    const auto& trials = doc.at("trials");
    if (!trials.is_number_integer() || trials.get<long long>() < 1) {
        throw ConfigError("config: field 'trials' must be a positive integer");
    }
    config.trials = trials.get<std::uint64_t>();

    if (!doc.contains("master_seed")) throw ConfigError("config: missing field 'master_seed'");
    const auto& seed = doc.at("master_seed");
    if (!seed.is_number_unsigned()) throw ConfigError("config: field 'master_seed' must be a nonnegative integer");
    config.master_seed = seed.get<std::uint64_t>();

    if (doc.contains("output_path")) {
        if (!doc.at("output_path").is_string()) throw ConfigError("config: field 'output_path' must be a string");
        config.output_path = doc.at("output_path").get<std::string>();
    }
    return config;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
    return config_from_json(doc);
}

void write_config(const ExperimentConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file '" + path.string() + "'");
    out << to_json(config).dump(2) << '\n';
}

// ---------------------------------------------------------------- statistics

Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (failures > trials) throw std::invalid_argument("wilson_interval: failures exceed trials");
    if (!(z > 0.0)) throw std::invalid_argument("wilson_interval: z must be positive");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
}

// ---------------------------------------------------------------- runner

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialRecord> run_trials(const InstanceSpec& instance,
                                    const StrategyFactory& factory,
                                    std::uint64_t trials,
                                    std::uint64_t master_seed,
                                    std::size_t threads) {
    std::vector<TrialRecord> records(trials);
    const PublicInfo info = public_info(instance);
    const std::size_t workers =
        static_cast<std::size_t>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(trials, 1)));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](std::size_t worker) {
        try {
            for (std::uint64_t i = worker; i < trials; i += workers) {
                Rng rng(child_seed(master_seed, i));
                auto strategy = factory(info);
                records[i] = simulate(instance, *strategy, rng);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

AggregateResult aggregate(std::string strategy,
                          const std::vector<TrialRecord>& records,
                          std::size_t resource_count,
                          std::uint64_t master_seed) {
    if (records.empty()) throw std::invalid_argument("aggregate: no trial records");
    AggregateResult out;
    out.strategy = std::move(strategy);
    out.trials = records.size();
    out.master_seed = master_seed;
    out.mean_consumption.assign(resource_count, 0.0);
    double pulls = 0.0;
    for (const TrialRecord& r : records) {
        if (!r.correct) ++out.failures;
        if (r.breached) ++out.breaches;
        pulls += static_cast<double>(r.pulls);
        for (std::size_t l = 0; l < resource_count; ++l) out.mean_consumption[l] += r.total_consumption[l];
    }
    const double n = static_cast<double>(out.trials);
    out.failure_rate = static_cast<double>(out.failures) / n;
    const Interval ci = wilson_interval(out.failures, out.trials);
    out.wilson_lo = std::min(ci.lo, out.failure_rate);
    out.wilson_hi = std::max(ci.hi, out.failure_rate);
    out.mean_pulls = pulls / n;
    for (double& c : out.mean_consumption) c /= n;
    return out;
}

std::vector<AggregateResult> run_experiment(const ExperimentConfig& config, std::size_t threads) {
    if (config.trials == 0) throw ConfigError("config: trials must be >= 1");
    if (config.strategies.empty()) throw ConfigError("config: no strategies");
    const InstanceSpec instance = config.instance ? *config.instance : load_instance(config.instance_path);
    if (!instance.has_unique_best()) throw ConfigError("instance has no unique best arm");

    std::vector<AggregateResult> results;
    for (const StrategyConfig& s : config.strategies) {
        const StrategyFactory factory = [&s](const PublicInfo& info) {
            return make_strategy(s.kind, info, s.params);
        };
        const auto records = run_trials(instance, factory, config.trials, config.master_seed, threads);
        results.push_back(aggregate(std::string(to_string(s.kind)), records, instance.resource_count(),
                                    config.master_seed));
    }
    return results;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_results_csv(std::ostream& out, const std::vector<AggregateResult>& results) {
    const std::size_t resources = results.empty() ? 0 : results.front().mean_consumption.size();
    out << "strategy,trials,failures,failure_rate,wilson_lo,wilson_hi,mean_pulls";
    for (std::size_t l = 1; l <= resources; ++l) out << ",mean_consumption_" << l;
    out << ",master_seed\n";
    for (const AggregateResult& r : results) {
        out << r.strategy << ',' << r.trials << ',' << r.failures << ',' << format_double(r.failure_rate)
            << ',' << format_double(r.wilson_lo) << ',' << format_double(r.wilson_hi) << ','
            << format_double(r.mean_pulls);
        for (double c : r.mean_consumption) out << ',' << format_double(c);
        out << ',' << r.master_seed << '\n';
    }
}

void write_results(const std::vector<AggregateResult>& results, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write results file '" + path.string() + "'");
    write_results_csv(out, results);
}

// ---------------------------------------------------------------- checks

LemmaCheck mc_check_consumption_lemma(double d, std::uint64_t draws, std::uint64_t repetitions, Rng& rng) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("lemma check: d must lie in (0,1)");
    if (draws == 0) throw std::invalid_argument("lemma check: N must be >= 1");
    if (repetitions == 0) throw std::invalid_argument("lemma check: repetitions must be >= 1");
    const double threshold = f_effective(d);
    const double n = static_cast<double>(draws);
    // Bern(d) draw from the top 53 bits, matching the simulator's sampler.
    std::uint64_t exceed = 0;
    for (std::uint64_t rep = 0; rep < repetitions; ++rep) {
        std::uint64_t ones = 0;
        for (std::uint64_t i = 0; i < draws; ++i) {
            ones += static_cast<double>(rng() >> 11) * 0x1.0p-53 < d ? 1 : 0;
        }
        if (static_cast<double>(ones) / n > threshold) ++exceed;
    }
    LemmaCheck out;
    out.empirical_prob = static_cast<double>(exceed) / static_cast<double>(repetitions);
    out.bound = std::exp(-n / 3.0);
    out.passes = out.empirical_prob <= out.bound + 3.0 * std::sqrt(out.bound / static_cast<double>(repetitions));
    return out;
}

InstanceSpec figure_instance(double d, ConsumptionMode mode) {
    return InstanceSpec({2.0}, {{RewardKind::bernoulli, 0.5}, {RewardKind::bernoulli, 0.4}}, {{d}, {d}}, mode);
}

std::vector<FigureRow> figure_compare(const std::vector<double>& dvals,
                                      std::uint64_t trials,
                                      std::uint64_t seed,
                                      std::size_t threads) {
    if (trials == 0) throw std::invalid_argument("figure-compare: trials must be >= 1");
    const StrategyFactory shrr = [](const PublicInfo& info) { return std::make_unique<ShrrStrategy>(info); };
    std::vector<FigureRow> rows;
    for (std::size_t p = 0; p < dvals.size(); ++p) {
        for (bool stochastic : {false, true}) {
            const auto mode = stochastic ? ConsumptionMode::independent_bernoulli : ConsumptionMode::deterministic;
            const InstanceSpec instance = figure_instance(dvals[p], mode);
            const std::uint64_t stream = child_seed(seed, 2 * p + (stochastic ? 1 : 0));
            const auto records = run_trials(instance, shrr, trials, stream, threads);
            FigureRow row;
            row.d = dvals[p];
            row.stochastic = stochastic;
            row.trials = trials;
            row.failures = static_cast<std::uint64_t>(
                std::count_if(records.begin(), records.end(), [](const TrialRecord& r) { return !r.correct; }));
            row.log_failure_rate = std::log(static_cast<double>(row.failures) / static_cast<double>(trials));
            rows.push_back(row);
        }
    }
    return rows;
}

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
    out << "d,setting,trials,failures,log_failure_rate\n";
    for (const FigureRow& r : rows) {
        out << format_double(r.d) << ',' << (r.stochastic ? "sto" : "det") << ',' << r.trials << ','
            << r.failures << ',' << format_double(r.log_failure_rate) << '\n';
    }
}

} // namespace bairc
