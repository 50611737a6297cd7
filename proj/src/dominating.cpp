#include "polling/dominating.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "polling/rng.hpp"
#include "polling/stats.hpp"
#include "polling/tails.hpp"

namespace polling {

double DominatingChain::jump_prob_down(int i) const {
    if (i <= 0 || i >= population) return 0.0;
    if (i < band_lo) return beta;
    if (i <= band_hi) return 0.5;
    return 1.0 - beta;
}

double DominatingChain::holding_rate(int i) const {
    if (i <= 0 || i >= population) return 0.0;
    if (i < band_lo) return c1 * i;
    if (i <= band_hi) return c2 * population;
    return c1 * (population - i);
}

DominatingChain build_dominating(int N, double epsilon, PollingRule rule,
                                 bool printed_variant) {
    if (!(2 * rule.d > rule.m && rule.m >= rule.d))
        throw std::invalid_argument("dominating chain requires 2d > m >= d");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0,1)");
    if (N < 4) throw std::invalid_argument("population too small");

    DominatingChain chain;
    chain.population = N;
    chain.epsilon = epsilon;
    chain.rule = rule;
    const double x = (1.0 - epsilon) / 2.0;
    chain.c1 = binomial_tail_le(rule.m, x, rule.m - rule.d);
    chain.c2 = binomial_tail_ge(rule.m, x, rule.d);
    const double a = printed_variant ? chain.c2 : chain.c1;
    const double b = printed_variant ? chain.c1 : chain.c2;
    chain.beta = (1.0 - epsilon) * a / ((1.0 - epsilon) * a + (1.0 + epsilon) * b);
    chain.band_lo = static_cast<int>(std::ceil((1.0 - epsilon) * N / 2.0));
    chain.band_hi = static_cast<int>(std::floor((1.0 + epsilon) * N / 2.0));
    if (!printed_variant && !(chain.beta > 0.5))
        throw std::logic_error("beta <= 1/2; drift bound unusable");
    return chain;
}

double gambler_ruin_hit(long long i, long long j, double beta) {
    if (i < 0 || j <= 0) throw std::domain_error("need i >= 0, j > 0");
    if (!(beta > 0.5 && beta < 1.0))
        throw std::domain_error("beta must lie in (1/2, 1); use the symmetric branch at 1/2");
    if (i >= j) return 1.0;
    if (i == 0) return 0.0;
    const double log_r = std::log(beta) - std::log1p(-beta);  // log(beta/(1-beta)) > 0
    const double li = i * log_r, lj = j * log_r;
    if (lj < 700.0) return std::expm1(li) / std::expm1(lj);
    // (r^i - 1)/(r^j - 1) = r^{i-j} (1 - r^{-i})/(1 - r^{-j})
    return std::exp(li - lj) * (-std::expm1(-li)) / (-std::expm1(-lj));
}

double gambler_ruin_hit_symmetric(long long i, long long j) {
    if (i < 0 || j <= 0) throw std::domain_error("need i >= 0, j > 0");
    if (i >= j) return 1.0;
    return static_cast<double>(i) / static_cast<double>(j);
}

double expected_visits(long long j, double beta) {
    if (j < 1) throw std::domain_error("need j >= 1");
    if (!(beta > 0.5 && beta < 1.0)) throw std::domain_error("beta must lie in (1/2, 1)");
    const double log_inv_r = std::log1p(-beta) - std::log(beta);  // log((1-beta)/beta) < 0
    const double n_j = -std::expm1(j * log_inv_r) / (2.0 * beta - 1.0);
    return std::min(n_j, 1.0 / (2.0 * beta - 1.0));
}

double tau0_upper_bound(const DominatingChain& chain) {
    double harmonic = 0.0;
    for (int j = 1; j < chain.band_lo; ++j) harmonic += 1.0 / (j * chain.c1);
    return (harmonic + chain.epsilon / chain.c2) / (2.0 * chain.beta - 1.0);
}

double simulate_dominating_absorption(const DominatingChain& chain, int start,
                                      std::uint64_t seed, int replica) {
    RngStream rng(seed, static_cast<std::uint64_t>(replica));
    int i = start;
    double t = 0.0;
    const int N = chain.population;
    while (i != 0 && i != N) {
        t += rng.exponential(chain.holding_rate(i));
        i += rng.bernoulli(chain.jump_prob_down(i)) ? -1 : 1;
    }
    return t;
}

double simulate_band_excursion(const DominatingChain& chain, std::uint64_t seed,
                               int replica) {
    RngStream rng(seed, static_cast<std::uint64_t>(replica));
    // The excursion entered at band_lo ends on falling below the band or on
    // first reaching band_hi, i.e. after an unbiased walk crosses a width-
    // eps*N stretch; this makes the expected duration exactly eps/c2.
    int i = chain.band_lo;
    double t = 0.0;
    while (i >= chain.band_lo && i < chain.band_hi) {
        t += rng.exponential(chain.holding_rate(i));
        i += rng.bernoulli(0.5) ? -1 : 1;
    }
    return t;
}

namespace {

void parallel_replicas(int replicas, int threads, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= replicas) return;
            body(r);
        }
    };
    const int workers = std::max(1, std::min(threads, replicas));
    if (workers == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Absorption time and first-passage time below `level` (of the folded value
// min(n, N-n)) for one consensus-chain replica.
struct PassageTimes {
    double absorption = 0.0;
    double level = 0.0;
};

PassageTimes simulate_consensus_passage(const ChainModel& chain, int start, int level,
                                        std::uint64_t seed, int replica) {
    RngStream rng(seed, static_cast<std::uint64_t>(replica));
    const int N = chain.population;
    int n = start;
    double t = 0.0;
    PassageTimes out;
    bool crossed = std::min(n, N - n) <= level;
    while (n != 0 && n != N) {
        const double total = chain.total_rate(n);
        t += rng.exponential(total);
        n += rng.bernoulli(chain.up_rate[n] / total) ? 1 : -1;
        if (!crossed && std::min(n, N - n) <= level) {
            crossed = true;
            out.level = t;
        }
    }
    out.absorption = t;
    if (!crossed) out.level = t;
    return out;
}

PassageTimes simulate_dominating_passage(const DominatingChain& chain, int start,
                                         int level, std::uint64_t seed, int replica) {
    RngStream rng(seed, static_cast<std::uint64_t>(replica));
    const int N = chain.population;
    int i = start;
    double t = 0.0;
    PassageTimes out;
    bool crossed = std::min(i, N - i) <= level;
    while (i != 0 && i != N) {
        t += rng.exponential(chain.holding_rate(i));
        i += rng.bernoulli(chain.jump_prob_down(i)) ? -1 : 1;
        if (!crossed && std::min(i, N - i) <= level) {
            crossed = true;
            out.level = t;
        }
    }
    out.absorption = t;
    if (!crossed) out.level = t;
    return out;
}

}  // namespace

DominationReport check_domination(int N, double epsilon, PollingRule rule, int start,
                                  int replicas, std::uint64_t seed, int threads) {
    const DominatingChain dom = build_dominating(N, epsilon, rule);
    if (start <= 0 || start >= dom.band_lo)
        throw std::invalid_argument("start must lie strictly inside the lower region");
    if (replicas < 2) throw std::invalid_argument("need at least 2 replicas");

    DominationReport report;
    report.population = N;
    report.epsilon = epsilon;
    report.beta = dom.beta;
    report.c1 = dom.c1;
    report.c2 = dom.c2;
    report.tau0_bound = tau0_upper_bound(dom);
    report.start = start;

    const ChainModel chain =
        build_chain(N, RuleDistribution::single(rule), SamplingMode::WithReplacement);

    // Lemma 1 grid inequalities, in the unfolded rates the proof works with.
    const double tol = 1e-12;
    report.jump_prob_ok = true;
    report.exit_rate_ok = true;
    for (int i = 1; i <= N / 2; ++i) {
        const double total = chain.total_rate(i);
        if (i < dom.band_lo &&
            chain.down_rate[i] / total < dom.beta - tol)
            report.jump_prob_ok = false;
        if (total < dom.holding_rate(i) - tol * dom.holding_rate(i))
            report.exit_rate_ok = false;
    }

    report.level = std::max(1, static_cast<int>(0.1 * N));

    std::vector<PassageTimes> x_times(replicas), y_times(replicas);
    parallel_replicas(replicas, threads, [&](int r) {
        x_times[r] = simulate_consensus_passage(chain, start, report.level, seed,
                                                2 * r);
        y_times[r] = simulate_dominating_passage(dom, start, report.level, seed,
                                                 2 * r + 1);
    });

    std::vector<double> xa(replicas), ya(replicas), xl(replicas), yl(replicas);
    for (int r = 0; r < replicas; ++r) {
        xa[r] = x_times[r].absorption;
        ya[r] = y_times[r].absorption;
        xl[r] = x_times[r].level;
        yl[r] = y_times[r].level;
    }
    report.mean_time_consensus = mean_stderr(xa).mean;
    report.mean_time_dominating = mean_stderr(ya).mean;
    report.ks_critical_value = ks_critical(replicas, replicas, 0.01, /*one_sided=*/true);
    report.ks_one_sided = ks_statistic_one_sided(xa, ya);
    report.cdf_dominance_ok = report.ks_one_sided <= report.ks_critical_value;

    report.mean_level_consensus = mean_stderr(xl).mean;
    report.mean_level_dominating = mean_stderr(yl).mean;
    report.ks_one_sided_level = ks_statistic_one_sided(xl, yl);
    report.level_dominance_ok = report.ks_one_sided_level <= report.ks_critical_value;

    std::vector<double> excursions(replicas);
    parallel_replicas(replicas, threads, [&](int r) {
        excursions[r] = simulate_band_excursion(dom, seed ^ 0xE5CC1A5Eull, r);
    });
    const MeanStderr ms = mean_stderr(excursions);
    report.band_excursion_mean = ms.mean;
    report.band_excursion_stderr = ms.stderr_;
    report.band_excursion_expected = epsilon / dom.c2;
    return report;
}

nlohmann::json DominationReport::to_json() const {
    return {{"n", population},
            {"epsilon", epsilon},
            {"beta", beta},
            {"c1", c1},
            {"c2", c2},
            {"start", start},
            {"tau0_bound", tau0_bound},
            {"jump_prob_ok", jump_prob_ok},
            {"exit_rate_ok", exit_rate_ok},
            {"mean_time_consensus", mean_time_consensus},
            {"mean_time_dominating", mean_time_dominating},
            {"ks_one_sided", ks_one_sided},
            {"ks_critical", ks_critical_value},
            {"cdf_dominance_ok", cdf_dominance_ok},
            {"band_excursion_mean", band_excursion_mean},
            {"band_excursion_stderr", band_excursion_stderr},
            {"band_excursion_expected", band_excursion_expected},
            {"level", level},
            {"mean_level_consensus", mean_level_consensus},
            {"mean_level_dominating", mean_level_dominating},
            {"ks_one_sided_level", ks_one_sided_level},
            {"level_dominance_ok", level_dominance_ok},
            {"verdict", jump_prob_ok && exit_rate_ok && cdf_dominance_ok &&
                            level_dominance_ok}};
}

}  // namespace polling
