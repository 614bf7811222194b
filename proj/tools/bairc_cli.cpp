// Command-line front end: instance generation, complexity analysis,
// experiment execution and the deterministic-vs-stochastic comparison.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bairc/complexity.hpp"
#include "bairc/harness.hpp"
#include "bairc/instance_io.hpp"
#include "bairc/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_list(const std::string& text, char sep = ',') {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("cannot parse number '" + item + "'");
        }
        if (used != item.size()) throw ValidationError("cannot parse number '" + item + "'");
        values.push_back(v);
    }
    return values;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

bairc::ConsumptionMode parse_mode_flag(const std::string& flag) {
    if (flag == "det") return bairc::ConsumptionMode::deterministic;
    if (flag == "corr") return bairc::ConsumptionMode::coupled_uniform;
    if (flag == "uncorr") return bairc::ConsumptionMode::independent_bernoulli;
    throw ValidationError("unknown --mode '" + flag + "'");
}

std::string report_text(const bairc::ComplexityReport& r) {
    std::ostringstream out;
    auto list = [&](const char* name, const std::vector<double>& v) {
        out << name << ':';
        for (double x : v) out << ' ' << bairc::format_double(x);
        out << '\n';
    };
    auto optional = [&](const char* name, const std::optional<double>& v) {
        out << name << ": " << (v ? bairc::format_double(*v) : std::string("n/a")) << '\n';
    };
    out << "arms: " << r.arm_count << "\nresources: " << r.resource_count << '\n';
    list("gaps", r.gaps);
    for (std::size_t l = 0; l < r.sorted_consumptions.size(); ++l) {
        list(("sorted_consumptions_" + std::to_string(l + 1)).c_str(), r.sorted_consumptions[l]);
    }
    list("h2_det", r.h2_det);
    list("h2_sto", r.h2_sto);
    list("h1_det", r.h1_det);
    list("tilde_h1_det", r.tilde_h1_det);
    list("tilde_h2_det", r.tilde_h2_det);
    optional("gamma_det", r.gamma_det);
    optional("gamma_sto", r.gamma_sto);
    optional("thm1_bound", r.thm1_bound);
    out << "thm2_bound: " << bairc::format_double(r.thm2_bound) << '\n';
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best-arm identification under resource constraints: SH-RR, anytime baselines, "
                 "complexity measures and Monte Carlo experiments"};
    app.require_subcommand(1);

    // gen-instance
    auto* gen = app.add_subcommand("gen-instance", "Write a synthetic half-split instance file");
    std::size_t gen_k = 0;
    std::size_t gen_l = 1;
    std::string gen_rewards;
    std::string gen_match;
    std::string gen_mode;
    double gen_capacity = 1500.0;
    std::string gen_out;
    gen->add_option("--K", gen_k, "Number of arms (even)")->required();
    gen->add_option("--L", gen_l, "Number of resources")->capture_default_str();
    gen->add_option("--rewards", gen_rewards, "Reward profile: onegroup|trap|poly|geom")->required();
    gen->add_option("--match", gen_match, "Consumption pattern: hmh|hml|m (m needs L=2)")->required();
    gen->add_option("--mode", gen_mode, "Consumption randomness: det|corr|uncorr")->required();
    gen->add_option("--capacity", gen_capacity, "Capacity of every resource")->capture_default_str();
    gen->add_option("--out", gen_out, "Output path (stdout when omitted)");

    // gen-lower-bound
    auto* lb = app.add_subcommand("gen-lower-bound", "Write a lower-bound family member");
    std::string lb_family;
    std::size_t lb_k = 0;
    std::size_t lb_i = 1;
    std::string lb_rewards;
    std::string lb_consumptions;
    double lb_capacity = 1000.0;
    std::string lb_out;
    lb->add_option("--family", lb_family, "det|sto|counterexample")->required();
    lb->add_option("--K", lb_k, "Number of arms")->required();
    lb->add_option("--i", lb_i, "1-based index of the flipped arm (det|sto)")->capture_default_str();
    lb->add_option("--base-rewards", lb_rewards,
                   "Comma list 1/2 = r_1 >= ... >= r_K >= 1/4 (default: evenly spaced)");
    lb->add_option("--sorted-consumptions", lb_consumptions,
                   "Non-increasing comma list per resource, resources separated by ';' "
                   "(default: d_(k) = (K-k+1)/K, one resource)");
    lb->add_option("--capacity", lb_capacity, "Capacity of every resource")->capture_default_str();
    lb->add_option("--out", lb_out, "Output path (stdout when omitted)");

    // complexity
    auto* cx = app.add_subcommand("complexity", "Complexity measures and bounds of an instance");
    std::string cx_instance;
    bool cx_json = false;
    cx->add_option("--instance", cx_instance, "Instance file")->required();
    cx->add_flag("--json", cx_json, "Emit the report as JSON");

    // run
    auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment from a config file");
    std::string run_config;
    std::size_t run_threads = 0;
    std::string run_out;
    run->add_option("--config", run_config, "Experiment config (JSON)")->required();
    run->add_option("--threads", run_threads, "Worker threads (0: all cores); never changes results")
        ->capture_default_str();
    run->add_option("--out", run_out, "Results CSV path (overrides output_path)");

    // figure-compare
    auto* fig = app.add_subcommand("figure-compare",
                                   "SH-RR failure rates, deterministic vs Bernoulli consumption");
    std::string fig_dvals = "0.2,0.1,0.05,0.02,0.01";
    std::uint64_t fig_trials = 100000;
    std::uint64_t fig_seed = 1;
    std::size_t fig_threads = 0;
    std::string fig_out;
    fig->add_option("--dvals", fig_dvals, "Comma list of mean consumptions d in (0,1]")->capture_default_str();
    fig->add_option("--trials", fig_trials, "Trials per (d, setting)")->capture_default_str();
    fig->add_option("--seed", fig_seed, "Master seed")->capture_default_str();
    fig->add_option("--threads", fig_threads, "Worker threads (0: all cores)")->capture_default_str();
    fig->add_option("--out", fig_out, "Output CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*gen) {
            const auto instance = bairc::gen_synthetic(gen_k, gen_l, bairc::parse_reward_profile(gen_rewards),
                                                       bairc::parse_consumption_match(gen_match),
                                                       parse_mode_flag(gen_mode), gen_capacity);
            emit_text(bairc::instance_to_json(instance).dump(2) + "\n", gen_out);
        } else if (*lb) {
            bairc::InstanceSpec instance = [&] {
                if (lb_family == "counterexample") return bairc::build_counterexample(lb_k, lb_capacity);
                if (lb_family != "det" && lb_family != "sto") {
                    throw ValidationError("unknown --family '" + lb_family + "'");
                }
                if (lb_k == 0) throw ValidationError("--K must be positive");
                if (lb_i < 1 || lb_i > lb_k) throw ValidationError("--i must lie in 1..K");
                std::vector<double> rewards = lb_rewards.empty() ? std::vector<double>{} : parse_list(lb_rewards);
                if (rewards.empty()) {
                    for (std::size_t k = 0; k < lb_k; ++k) {
                        rewards.push_back(lb_k == 1 ? 0.5 : 0.5 - 0.25 * static_cast<double>(k) /
                                                                      static_cast<double>(lb_k - 1));
                    }
                }
                std::vector<std::vector<double>> sorted;
                if (lb_consumptions.empty()) {
                    std::vector<double> row;
                    for (std::size_t k = 0; k < lb_k; ++k) {
                        row.push_back(static_cast<double>(lb_k - k) / static_cast<double>(lb_k));
                    }
                    sorted.push_back(row);
                } else {
                    std::stringstream rows(lb_consumptions);
                    std::string row;
                    while (std::getline(rows, row, ';')) sorted.push_back(parse_list(row));
                }
                if (rewards.size() != lb_k) throw ValidationError("--base-rewards must list K values");
                std::vector<double> caps(sorted.size(), lb_capacity);
                return lb_family == "det" ? bairc::build_det_lb_instance(rewards, sorted, lb_i - 1, caps)
                                          : bairc::build_sto_lb_instance(rewards, sorted, lb_i - 1, caps);
            }();
            emit_text(bairc::instance_to_json(instance).dump(2) + "\n", lb_out);
        } else if (*cx) {
            const auto report = bairc::complexity_report(bairc::load_instance(cx_instance));
            std::cout << (cx_json ? bairc::to_json(report).dump(2) + "\n" : report_text(report));
        } else if (*run) {
            const auto config = bairc::read_config(run_config);
            const auto results = bairc::run_experiment(config, run_threads);
            std::ostringstream csv;
            bairc::write_results_csv(csv, results);
            emit_text(csv.str(), run_out.empty() ? config.output_path : run_out);
        } else if (*fig) {
            const auto dvals = parse_list(fig_dvals);
            if (dvals.empty()) throw ValidationError("--dvals is empty");
            for (double d : dvals) {
                if (!(d > 0.0 && d <= 1.0)) throw ValidationError("every d must lie in (0,1]");
            }
            const auto rows = bairc::figure_compare(dvals, fig_trials, fig_seed, fig_threads);
            std::ostringstream csv;
            bairc::write_figure_csv(csv, rows);
            emit_text(csv.str(), fig_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
