#include <cmath>
#include <sstream>

#include <doctest.h>

#include "polling/simulate.hpp"
#include "polling/solver.hpp"
#include "polling/stats.hpp"

using namespace polling;

namespace {

SimConfig base_config(int n, const char* spec, int initial, int replicas) {
    SimConfig c;
    c.population = n;
    c.rules = RuleDistribution::parse(spec);
    c.initial_ones = initial;
    c.replicas = replicas;
    c.seed = 20260823;
    return c;
}

}  // namespace

TEST_CASE("degenerate starts absorb immediately") {
    auto config = base_config(30, "2:2", 0, 4);
    for (auto engine : {Engine::Aggregate, Engine::AgentLevel}) {
        config.engine = engine;
        for (const auto& o : run_replicas(config)) {
            CHECK(o.absorbed_value == 0);
            CHECK(o.absorption_time == 0.0);
            CHECK(o.events == 0);
        }
        config.initial_ones = 30;
        for (const auto& o : run_replicas(config)) {
            CHECK(o.absorbed_value == 1);
            CHECK(o.absorption_time == 0.0);
        }
        config.initial_ones = 0;
    }
}

TEST_CASE("determinism: outcomes depend only on (seed, replica, config)") {
    auto config = base_config(40, "3:2", 15, 64);
    config.engine = Engine::AgentLevel;
    config.alpha = 0.1;
    const auto serial = run_replicas(config);
    config.threads = 8;
    const auto parallel = run_replicas(config);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].absorbed_value == parallel[i].absorbed_value);
        CHECK(serial[i].absorption_time == parallel[i].absorption_time);
        CHECK(serial[i].alpha_exit_time == parallel[i].alpha_exit_time);
        CHECK(serial[i].events == parallel[i].events);
    }
    std::ostringstream a, b;
    write_outcomes_csv(a, config, serial);
    write_outcomes_csv(b, config, parallel);
    CHECK(a.str() == b.str());
}

TEST_CASE("voter martingale: absorbed-at-ones fraction equals initial fraction") {
    auto config = base_config(50, "1:1", 15, 20000);
    const auto outcomes = run_replicas(config);
    const auto summary = estimate(config, outcomes);
    CHECK(summary.censored == 0);
    const double expect = 15.0 / 50.0;
    CHECK(std::abs(summary.absorbed_one.point - expect) <
          3.0 * summary.absorbed_one.stderr_);
}

TEST_CASE("aggregate mean absorption time matches the exact solver") {
    auto config = base_config(100, "2:2", 50, 20000);
    const auto outcomes = run_replicas(config);
    const auto summary = estimate(config, outcomes);
    const auto chain = build_chain(100, config.rules, SamplingMode::WithReplacement);
    const auto exact = solve_chain(chain, 0.0);
    CHECK(std::abs(summary.mean_absorption_time.point - exact.t0[50]) <
          3.0 * summary.mean_absorption_time.stderr_);
}

TEST_CASE("agent-level and aggregate engines agree in law") {
    auto config = base_config(50, "3:2", 20, 8000);
    config.alpha = 0.1;
    config.engine = Engine::Aggregate;
    const auto agg = run_replicas(config);
    config.engine = Engine::AgentLevel;
    config.seed += 1;  // independent streams for the two-sample comparison
    const auto agent = run_replicas(config);

    const auto s_agg = estimate(config, agg);
    const auto s_agent = estimate(config, agent);
    const double pooled = std::hypot(s_agg.absorbed_one.stderr_,
                                     s_agent.absorbed_one.stderr_);
    CHECK(std::abs(s_agg.absorbed_one.point - s_agent.absorbed_one.point) <
          3.0 * pooled);

    std::vector<double> ta, tb;
    for (const auto& o : agg) ta.push_back(o.absorption_time);
    for (const auto& o : agent) tb.push_back(o.absorption_time);
    CHECK(ks_statistic(ta, tb) < ks_critical(ta.size(), tb.size(), 0.01, false));
}

TEST_CASE("estimate: proportions and censoring") {
    SimConfig config = base_config(10, "1:1", 5, 4);
    std::vector<SimOutcome> outcomes;
    for (int r = 0; r < 100; ++r) {
        SimOutcome o;
        o.replica = r;
        o.absorbed_value = r < 50 ? 1 : 0;
        o.absorption_time = 2.0;
        o.alpha_exit_time = 1.0;
        outcomes.push_back(o);
    }
    const auto s = estimate(config, outcomes);
    CHECK(s.absorbed_one.point == doctest::Approx(0.5));
    CHECK(s.absorbed_one.stderr_ == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s.wrong_consensus.point == doctest::Approx(0.5));  // minority is 1
    CHECK(s.mean_absorption_time.point == doctest::Approx(2.0));
    CHECK(s.mean_absorption_time.stderr_ == 0.0);  // constant sample
    CHECK(s.absorbed_one.ci95_low <= s.absorbed_one.point);
    CHECK(s.absorbed_one.point <= s.absorbed_one.ci95_high);

    // all absorbed at 0: the Wilson interval stays near zero
    for (auto& o : outcomes) o.absorbed_value = 0;
    const auto s0 = estimate(config, outcomes);
    CHECK(s0.absorbed_one.point == 0.0);
    CHECK(s0.absorbed_one.ci95_high < 0.05);

    // censored replicas are excluded and counted
    outcomes[0].absorbed_value = -1;
    const auto sc = estimate(config, outcomes);
    CHECK(sc.censored == 1);
    CHECK(sc.mean_absorption_time.n_samples == 99);

    for (auto& o : outcomes) o.absorbed_value = -1;
    CHECK_THROWS(estimate(config, outcomes));
}

TEST_CASE("config validation") {
    auto config = base_config(30, "2:2", 31, 10);
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.initial_ones = 10;
    config.replicas = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.replicas = 10;
    config.alpha = 0.5;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("alpha exit precedes absorption") {
    auto config = base_config(80, "2:2", 40, 500);
    config.alpha = 0.2;
    for (const auto& o : run_replicas(config)) {
        CHECK(o.alpha_exit_time <= o.absorption_time);
        CHECK(o.alpha_exit_time >= 0.0);
    }
}

TEST_CASE("max_time censoring is reported, not dropped") {
    auto config = base_config(60, "1:1", 30, 50);
    config.max_time = 1e-3;  // far below any realistic consensus time
    const auto outcomes = run_replicas(config);
    std::size_t censored = 0;
    for (const auto& o : outcomes) censored += o.censored();
    CHECK(censored == outcomes.size());
    CHECK_THROWS(estimate(config, outcomes));
}
