#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "polling/chain.hpp"
#include "polling/rules.hpp"

namespace polling {

enum class Engine { Aggregate, AgentLevel };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

struct SimConfig {
    int population = 0;
    RuleDistribution rules = RuleDistribution::single({1, 1});
    SamplingMode mode = SamplingMode::WithReplacement;
    bool exclude_self = false;
    int initial_ones = 0;
    double alpha = 0.0;  // proximity threshold; 0 means consensus itself
    int replicas = 1;
    std::uint64_t seed = 0;
    Engine engine = Engine::Aggregate;
    double max_time = 0.0;  // <= 0: default 100 * (1 + log N)
    int threads = 1;

    double effective_max_time() const;
    void validate() const;
    nlohmann::json to_json() const;
};

struct SimOutcome {
    int replica = 0;
    int absorbed_value = -1;  // 0, 1, or -1 when the time cutoff was hit
    double absorption_time = 0.0;
    double alpha_exit_time = 0.0;
    std::uint64_t events = 0;

    bool censored() const { return absorbed_value < 0; }
};

struct Estimate {
    double point = 0.0;
    double stderr_ = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::size_t n_samples = 0;
};

struct SimSummary {
    Estimate absorbed_one;          // proportion absorbed at all-ones
    Estimate wrong_consensus;       // proportion absorbed at the initial minority value
    Estimate mean_absorption_time;
    Estimate mean_alpha_exit_time;
    std::size_t censored = 0;
    int minority_value = 1;  // which consensus counts as wrong
};

// One replica of the event-driven simulation of the 1-D count chain. The
// chain must come from build_chain with the same parameters as config.
SimOutcome simulate_aggregate(const SimConfig& config, const ChainModel& chain,
                              int replica);

// One replica of the full Algorithm-style simulation: every node has a state,
// a global Exp(N) clock picks the updating node (superposition of the N unit
// clocks), and the node polls per its freshly drawn rule.
SimOutcome simulate_agent_level(const SimConfig& config, int replica);

// Runs all replicas, possibly across config.threads workers. Outcomes are
// ordered by replica index and depend only on (seed, replica, config).
std::vector<SimOutcome> run_replicas(const SimConfig& config);

// Wilson interval for proportions, normal-theory intervals for means.
// Censored replicas are excluded from every estimate and counted separately.
// Throws if fewer than two replicas completed.
SimSummary estimate(const SimConfig& config, const std::vector<SimOutcome>& outcomes);

void write_outcomes_csv(std::ostream& out, const SimConfig& config,
                        const std::vector<SimOutcome>& outcomes);

nlohmann::json summary_json(const SimConfig& config, const SimSummary& summary);

}  // namespace polling
