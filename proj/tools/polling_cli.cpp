// Command-line front end: exact solves, sweeps, exponent tables, Monte Carlo
// runs, and dominating-chain reports, emitted as figure-ready CSV/JSON.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polling/asymptotics.hpp"
#include "polling/chain.hpp"
#include "polling/dominating.hpp"
#include "polling/rules.hpp"
#include "polling/simulate.hpp"
#include "polling/solver.hpp"

namespace {

using polling::RuleDistribution;
using polling::SamplingMode;

struct RuleOptions {
    std::string rule_spec;
    std::string rules_file;

    RuleDistribution resolve() const {
        if (!rules_file.empty()) return RuleDistribution::load_file(rules_file);
        if (!rule_spec.empty()) return RuleDistribution::parse(rule_spec);
        throw CLI::ValidationError("one of --rule or --rules is required");
    }
};

void add_rule_options(CLI::App* cmd, RuleOptions& opts) {
    cmd->add_option("--rule", opts.rule_spec,
                    "rule spec 'm:d' or mixture 'm:d@w,m:d@w,...'");
    cmd->add_option("--rules", opts.rules_file,
                    "JSON file with {m,d[,weight]} records");
}

// Whole file is written at once so a failed computation leaves nothing behind.
void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

nlohmann::json chain_config_json(int n, const RuleDistribution& rules,
                                 SamplingMode mode, bool exclude_self, double alpha) {
    return {{"n", n},
            {"rules", rules.to_json()},
            {"mode", polling::to_string(mode)},
            {"exclude_self", exclude_self},
            {"alpha", alpha}};
}

int run_exact(int n, const RuleOptions& rule_opts, const std::string& mode_str,
              bool exclude_self, double alpha, const std::string& out_path,
              const std::string& format) {
    const RuleDistribution rules = rule_opts.resolve();
    const SamplingMode mode = polling::sampling_mode_from_string(mode_str);
    const auto chain = polling::build_chain(n, rules, mode, exclude_self);
    const auto result = polling::solve_chain(chain, alpha);
    const nlohmann::json config = chain_config_json(n, rules, mode, exclude_self, alpha);

    std::ostringstream os;
    if (format == "csv") {
        polling::write_solve_csv(os, result, {"config " + config.dump()});
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i <= n; ++i)
            rows.push_back({{"i", i},
                            {"h", result.h[i]},
                            {"t0", result.t0[i]},
                            {"t_alpha", result.t_alpha[i]}});
        os << nlohmann::json{{"config", config}, {"rows", rows}}.dump(2) << "\n";
    }
    write_file(out_path, os.str());
    return 0;
}

int run_sweep(const std::vector<int>& n_list, const RuleOptions& rule_opts,
              const std::string& mode_str, bool exclude_self, double initial_frac,
              double alpha, const std::string& out_path) {
    if (n_list.empty()) throw CLI::ValidationError("--n-list must be nonempty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw CLI::ValidationError("--n-list must be strictly ascending");

    const RuleDistribution rules = rule_opts.resolve();
    const SamplingMode mode = polling::sampling_mode_from_string(mode_str);

    // Theorem-1 overlay only applies to a deterministic (m,m) rule.
    int bound_m = 0;
    if (rules.is_degenerate()) {
        const auto r = rules.entries().front().rule;
        if (r.m == r.d && r.m >= 2) bound_m = r.m;
    }

    std::ostringstream os;
    os << "# config "
       << nlohmann::json{{"n_list", n_list},
                         {"rules", rules.to_json()},
                         {"mode", polling::to_string(mode)},
                         {"initial_frac", initial_frac},
                         {"alpha", alpha}}
              .dump()
       << "\n";
    os << "n,i,h,log_h,t0,theorem1_bound_c1\n";
    os.precision(17);
    for (int n : n_list) {
        const auto chain = polling::build_chain(n, rules, mode, exclude_self);
        const auto result = polling::solve_chain(chain, alpha);
        const int i = static_cast<int>(std::floor(initial_frac * n + 1e-9));
        const double log_h =
            result.log_resistor.empty() ? 0.0 : std::log(result.h[i]);
        os << n << ',' << i << ',' << result.h[i] << ',' << log_h << ','
           << result.t0[i] << ',';
        if (bound_m > 0)
            os << polling::theorem1_bound(n, bound_m, initial_frac, 1.0);
        else
            os << "nan";
        os << "\n";
    }
    write_file(out_path, os.str());
    return 0;
}

int run_exponent(const RuleOptions& rule_opts, double mixture_p, bool have_p,
                 double x_min, double x_max, int steps, const std::string& out_path) {
    const RuleDistribution rules =
        have_p ? polling::mixture_11_22(mixture_p) : rule_opts.resolve();
    if (!(x_min > 0.0 && x_max <= 0.5 && x_min < x_max))
        throw CLI::ValidationError("need 0 < x-min < x-max <= 0.5");
    if (steps < 2) throw CLI::ValidationError("--steps must be >= 2");

    std::ostringstream os;
    os << "# config "
       << nlohmann::json{{"rules", rules.to_json()},
                         {"x_min", x_min},
                         {"x_max", x_max},
                         {"steps", steps}}
              .dump()
       << "\n";
    os << "x,g,exponent\n";
    os.precision(17);
    for (int k = 0; k < steps; ++k) {
        const double x = x_min + (x_max - x_min) * k / (steps - 1);
        os << x << ',' << polling::drift_ratio(x, rules) << ','
           << polling::exponent_integral(x, rules) << "\n";
    }
    write_file(out_path, os.str());
    return 0;
}

int run_simulate(polling::SimConfig config, double initial_frac, bool have_frac,
                 const std::string& out_base, const std::string& format) {
    if (have_frac)
        config.initial_ones =
            static_cast<int>(std::floor(initial_frac * config.population + 1e-9));
    config.validate();
    const auto outcomes = polling::run_replicas(config);
    const auto summary = polling::estimate(config, outcomes);

    if (format == "csv" || format == "both") {
        std::ostringstream os;
        polling::write_outcomes_csv(os, config, outcomes);
        write_file(out_base == "-" ? "-" : out_base + ".csv", os.str());
    }
    if (format == "json" || format == "both") {
        std::ostringstream os;
        os << polling::summary_json(config, summary).dump(2) << "\n";
        write_file(out_base == "-" ? "-" : out_base + ".json", os.str());
    }
    return 0;
}

int run_dominate(int n, const RuleOptions& rule_opts, double epsilon, int start,
                 int replicas, std::uint64_t seed, int threads,
                 const std::string& out_path) {
    const RuleDistribution rules = rule_opts.resolve();
    if (!rules.is_degenerate())
        throw CLI::ValidationError("dominate expects a single deterministic rule");
    if (start <= 0) start = n / 3;
    const auto report = polling::check_domination(
        n, epsilon, rules.entries().front().rule, start, replicas, seed, threads);
    write_file(out_path, report.to_json().dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis and Monte Carlo simulation of (m,d) polling "
                 "consensus on the complete graph"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file (flags override file values)");
    app.allow_config_extras(false);

    // exact
    auto* exact = app.add_subcommand("exact", "per-state h, t0, t_alpha table");
    int ex_n = 100;
    RuleOptions ex_rules;
    std::string ex_mode = "with", ex_out = "-", ex_format = "csv";
    bool ex_excl = false;
    double ex_alpha = 0.1;
    exact->add_option("--n", ex_n, "population size")->required();
    add_rule_options(exact, ex_rules);
    exact->add_option("--mode", ex_mode, "sampling: with|without");
    exact->add_flag("--exclude-self", ex_excl, "without-replacement: node cannot draw itself");
    exact->add_option("--alpha", ex_alpha, "proximity threshold for t_alpha");
    exact->add_option("--out", ex_out, "output path ('-' = stdout)");
    exact->add_option("--format", ex_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // sweep
    auto* sweep = app.add_subcommand("sweep", "log h, t0 and Theorem-1 bound across N");
    std::vector<int> sw_ns;
    RuleOptions sw_rules;
    std::string sw_mode = "with", sw_out = "-";
    bool sw_excl = false;
    double sw_frac = 1.0 / 3.0, sw_alpha = 0.1;
    sweep->add_option("--n-list", sw_ns, "ascending population sizes")
        ->required()
        ->delimiter(',');
    add_rule_options(sweep, sw_rules);
    sweep->add_option("--mode", sw_mode, "sampling: with|without");
    sweep->add_flag("--exclude-self", sw_excl, "");
    sweep->add_option("--initial-frac", sw_frac, "initial fraction of state-1 nodes");
    sweep->add_option("--alpha", sw_alpha, "proximity threshold");
    sweep->add_option("--out", sw_out, "output path ('-' = stdout)");

    // exponent
    auto* expo = app.add_subcommand("exponent", "drift ratio and error-exponent grid");
    RuleOptions xp_rules;
    double xp_p = 0.0, xp_min = 0.01, xp_max = 0.5;
    int xp_steps = 50;
    std::string xp_out = "-";
    add_rule_options(expo, xp_rules);
    auto* p_opt = expo->add_option("--mixture-p", xp_p,
                                   "(1,1)/(2,2) mixture weight on (1,1)");
    expo->add_option("--x-min", xp_min, "grid start");
    expo->add_option("--x-max", xp_max, "grid end (<= 0.5)");
    expo->add_option("--steps", xp_steps, "grid points");
    expo->add_option("--out", xp_out, "output path ('-' = stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo replicas + estimates");
    polling::SimConfig sc;
    RuleOptions sm_rules;
    std::string sm_mode = "with", sm_engine = "aggregate", sm_out, sm_format = "both";
    double sm_frac = 0.0;
    sim->add_option("--n", sc.population, "population size")->required();
    add_rule_options(sim, sm_rules);
    sim->add_option("--mode", sm_mode, "sampling: with|without");
    sim->add_flag("--exclude-self", sc.exclude_self, "");
    auto* frac_opt = sim->add_option("--initial-frac", sm_frac, "initial fraction");
    sim->add_option("--initial-ones", sc.initial_ones, "initial count of state-1 nodes");
    sim->add_option("--alpha", sc.alpha, "proximity threshold");
    sim->add_option("--replicas", sc.replicas, "number of replicas")->required();
    sim->add_option("--seed", sc.seed, "RNG seed");
    sim->add_option("--engine", sm_engine, "aggregate|agent");
    sim->add_option("--max-time", sc.max_time, "censoring cutoff (default 100(1+log N))");
    sim->add_option("--threads", sc.threads, "worker threads");
    sim->add_option("--out", sm_out, "output base path (.csv/.json appended)")
        ->required();
    sim->add_option("--format", sm_format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    // dominate
    auto* dom = app.add_subcommand("dominate", "dominating-chain report");
    int dm_n = 200, dm_start = 0, dm_replicas = 10000, dm_threads = 1;
    RuleOptions dm_rules;
    double dm_eps = 0.2;
    std::uint64_t dm_seed = 0;
    std::string dm_out = "-";
    dom->add_option("--n", dm_n, "population size")->required();
    add_rule_options(dom, dm_rules);
    dom->add_option("--epsilon", dm_eps, "central band half-width fraction");
    dom->add_option("--start", dm_start, "initial state (default N/3)");
    dom->add_option("--replicas", dm_replicas, "replicas per process");
    dom->add_option("--seed", dm_seed, "RNG seed");
    dom->add_option("--threads", dm_threads, "worker threads");
    dom->add_option("--out", dm_out, "output path ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exact->parsed())
            return run_exact(ex_n, ex_rules, ex_mode, ex_excl, ex_alpha, ex_out,
                             ex_format);
        if (sweep->parsed())
            return run_sweep(sw_ns, sw_rules, sw_mode, sw_excl, sw_frac, sw_alpha,
                             sw_out);
        if (expo->parsed())
            return run_exponent(xp_rules, xp_p, p_opt->count() > 0, xp_min, xp_max,
                                xp_steps, xp_out);
        if (sim->parsed()) {
            sc.rules = sm_rules.resolve();
            sc.mode = polling::sampling_mode_from_string(sm_mode);
            sc.engine = polling::engine_from_string(sm_engine);
            return run_simulate(sc, sm_frac, frac_opt->count() > 0, sm_out, sm_format);
        }
        if (dom->parsed())
            return run_dominate(dm_n, dm_rules, dm_eps, dm_start, dm_replicas,
                                dm_seed, dm_threads, dm_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
