#include "polling/simulate.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "polling/rng.hpp"
#include "polling/solver.hpp"
#include "polling/stats.hpp"

namespace polling {

namespace {
constexpr std::uint64_t kEventGuard = 2'000'000'000ull;
constexpr double kZ95 = 1.959963984540054;
}  // namespace

std::string to_string(Engine e) {
    return e == Engine::Aggregate ? "aggregate" : "agent";
}

Engine engine_from_string(const std::string& s) {
    if (s == "aggregate") return Engine::Aggregate;
    if (s == "agent" || s == "agent-level") return Engine::AgentLevel;
    throw std::invalid_argument("engine must be 'aggregate' or 'agent', got '" + s + "'");
}

double SimConfig::effective_max_time() const {
    if (max_time > 0.0) return max_time;
    return 100.0 * (1.0 + std::log(static_cast<double>(population)));
}

void SimConfig::validate() const {
    if (population < 2) throw std::invalid_argument("population must be >= 2");
    if (initial_ones < 0 || initial_ones > population)
        throw std::invalid_argument("initial_ones outside [0, N]");
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw std::invalid_argument("alpha must lie in [0, 1/2)");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

nlohmann::json SimConfig::to_json() const {
    return {{"n", population},
            {"rules", rules.to_json()},
            {"mode", polling::to_string(mode)},
            {"exclude_self", exclude_self},
            {"initial_ones", initial_ones},
            {"alpha", alpha},
            {"replicas", replicas},
            {"seed", seed},
            {"engine", polling::to_string(engine)},
            {"max_time", effective_max_time()}};
    // threads is an execution detail, not part of the statistical
    // configuration: outputs are identical for any worker count.
}

namespace {

// Shared bookkeeping for both engines: alpha-band exit and absorption.
struct Tracker {
    int lo, hi;  // proximity band is (lo, hi); exit when count <= lo or >= hi
    double alpha_exit_time = -1.0;

    Tracker(int N, double alpha)
        : lo(alpha_lower_index(N, alpha)), hi(alpha_upper_index(N, alpha)) {}

    void observe(int count, double time) {
        if (alpha_exit_time < 0.0 && (count <= lo || count >= hi))
            alpha_exit_time = time;
    }
};

SimOutcome finish(int replica, int absorbed, double time, const Tracker& tracker,
                  std::uint64_t events) {
    SimOutcome out;
    out.replica = replica;
    out.absorbed_value = absorbed;
    out.absorption_time = time;
    out.alpha_exit_time = tracker.alpha_exit_time >= 0.0 ? tracker.alpha_exit_time : time;
    out.events = events;
    return out;
}

}  // namespace

SimOutcome simulate_aggregate(const SimConfig& config, const ChainModel& chain,
                              int replica) {
    const int N = config.population;
    RngStream rng(config.seed, static_cast<std::uint64_t>(replica));
    Tracker tracker(N, config.alpha);
    const double cutoff = config.effective_max_time();

    int n = config.initial_ones;
    double t = 0.0;
    std::uint64_t events = 0;
    tracker.observe(n, t);
    while (n != 0 && n != N) {
        const double total = chain.total_rate(n);
        t += rng.exponential(total);
        if (t > cutoff || events >= kEventGuard)
            return finish(replica, -1, cutoff, tracker, events);
        ++events;
        n += rng.bernoulli(chain.up_rate[n] / total) ? 1 : -1;
        tracker.observe(n, t);
    }
    return finish(replica, n == N ? 1 : 0, t, tracker, events);
}

namespace {

// Draw a rule index from the cumulative weights.
int draw_rule(const std::vector<double>& cumulative, RngStream& rng) {
    const double u = rng.uniform();
    for (std::size_t i = 0; i + 1 < cumulative.size(); ++i)
        if (u <= cumulative[i]) return static_cast<int>(i);
    return static_cast<int>(cumulative.size()) - 1;
}

}  // namespace

SimOutcome simulate_agent_level(const SimConfig& config, int replica) {
    const int N = config.population;
    RngStream rng(config.seed, static_cast<std::uint64_t>(replica));
    Tracker tracker(N, config.alpha);
    const double cutoff = config.effective_max_time();

    std::vector<std::uint8_t> state(N, 0);
    for (int i = 0; i < config.initial_ones; ++i) state[i] = 1;
    int count = config.initial_ones;
    tracker.observe(count, 0.0);

    const auto& entries = config.rules.entries();
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& e : entries) cumulative.push_back(acc += e.weight);

    std::vector<int> sample;
    sample.reserve(kMaxPollSize);

    double t = 0.0;
    std::uint64_t events = 0;
    while (count != 0 && count != N) {
        t += rng.exponential(static_cast<double>(N));
        if (t > cutoff || events >= kEventGuard)
            return finish(replica, -1, cutoff, tracker, events);
        ++events;

        const int node = static_cast<int>(rng.uniform_int(N));
        const PollingRule rule = entries[draw_rule(cumulative, rng)].rule;

        sample.clear();
        if (config.mode == SamplingMode::WithReplacement) {
            for (int k = 0; k < rule.m; ++k)
                sample.push_back(static_cast<int>(rng.uniform_int(N)));
        } else {
            // m distinct peers by rejection; m << N so this terminates fast.
            while (static_cast<int>(sample.size()) < rule.m) {
                const int v = static_cast<int>(rng.uniform_int(N));
                if (config.exclude_self && v == node) continue;
                bool dup = false;
                for (int s : sample) dup |= (s == v);
                if (!dup) sample.push_back(v);
            }
        }

        int ones = 0;
        for (int s : sample) ones += state[s];
        const int disagree = state[node] ? rule.m - ones : ones;
        if (disagree >= rule.d) {
            count += state[node] ? -1 : 1;
            state[node] ^= 1;
            tracker.observe(count, t);
        }
    }
    return finish(replica, count == N ? 1 : 0, t, tracker, events);
}

std::vector<SimOutcome> run_replicas(const SimConfig& config) {
    config.validate();
    std::vector<SimOutcome> outcomes(config.replicas);

    ChainModel chain;  // built once, shared read-only across workers
    if (config.engine == Engine::Aggregate)
        chain = build_chain(config.population, config.rules, config.mode,
                            config.exclude_self);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= config.replicas) return;
            outcomes[r] = config.engine == Engine::Aggregate
                              ? simulate_aggregate(config, chain, r)
                              : simulate_agent_level(config, r);
        }
    };

    const int workers = std::min(config.threads, config.replicas);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return outcomes;
}

namespace {

Estimate proportion_estimate(std::size_t successes, std::size_t n) {
    Estimate e;
    e.n_samples = n;
    e.point = static_cast<double>(successes) / n;
    e.stderr_ = std::sqrt(e.point * (1.0 - e.point) / n);
    const Interval w = wilson_interval(successes, n);
    e.ci95_low = w.low;
    e.ci95_high = w.high;
    return e;
}

Estimate mean_estimate(std::span<const double> values) {
    const MeanStderr ms = mean_stderr(values);
    Estimate e;
    e.n_samples = ms.n;
    e.point = ms.mean;
    e.stderr_ = ms.stderr_;
    e.ci95_low = ms.mean - kZ95 * ms.stderr_;
    e.ci95_high = ms.mean + kZ95 * ms.stderr_;
    return e;
}

}  // namespace

SimSummary estimate(const SimConfig& config, const std::vector<SimOutcome>& outcomes) {
    SimSummary s;
    std::vector<double> times, alpha_times;
    std::size_t ones = 0, completed = 0;
    for (const auto& o : outcomes) {
        if (o.censored()) {
            ++s.censored;
            continue;
        }
        ++completed;
        ones += static_cast<std::size_t>(o.absorbed_value == 1);
        times.push_back(o.absorption_time);
        alpha_times.push_back(o.alpha_exit_time);
    }
    if (completed == 0) throw std::runtime_error("all replicas censored");
    if (completed < 2) throw std::runtime_error("need at least 2 completed replicas");

    // The wrong consensus is absorption on the value that started in the
    // minority; at an exact tie no value is wrong and we report the 1-side.
    s.minority_value = 2 * config.initial_ones <= config.population ? 1 : 0;
    const std::size_t wrong = s.minority_value == 1 ? ones : completed - ones;

    s.absorbed_one = proportion_estimate(ones, completed);
    s.wrong_consensus = proportion_estimate(wrong, completed);
    s.mean_absorption_time = mean_estimate(times);
    s.mean_alpha_exit_time = mean_estimate(alpha_times);
    return s;
}

void write_outcomes_csv(std::ostream& out, const SimConfig& config,
                        const std::vector<SimOutcome>& outcomes) {
    out << "# config " << config.to_json().dump() << "\n";
    out << "replica,absorbed_value,absorption_time,alpha_exit_time,events\n";
    out.precision(17);
    for (const auto& o : outcomes)
        out << o.replica << ',' << o.absorbed_value << ',' << o.absorption_time << ','
            << o.alpha_exit_time << ',' << o.events << "\n";
}

namespace {
nlohmann::json estimate_json(const Estimate& e) {
    return {{"point", e.point},
            {"stderr", e.stderr_},
            {"ci95_low", e.ci95_low},
            {"ci95_high", e.ci95_high},
            {"n_samples", e.n_samples}};
}
}  // namespace

nlohmann::json summary_json(const SimConfig& config, const SimSummary& summary) {
    return {{"config", config.to_json()},
            {"absorbed_one", estimate_json(summary.absorbed_one)},
            {"wrong_consensus", estimate_json(summary.wrong_consensus)},
            {"minority_value", summary.minority_value},
            {"mean_absorption_time", estimate_json(summary.mean_absorption_time)},
            {"mean_alpha_exit_time", estimate_json(summary.mean_alpha_exit_time)},
            {"censored", summary.censored}};
}

}  // namespace polling
