#pragma once

#include <cstdint>

#include <json.hpp>

#include "polling/chain.hpp"
#include "polling/rules.hpp"

namespace polling {

// Three-region birth-death chain whose absorption time stochastically
// dominates the consensus time: outward drift beta below (1-eps)N/2 and
// above (1+eps)N/2, a symmetric central band in between, absorbing at 0
// and N. Holding rates c1*i / c2*N / c1*(N-i) by region.
struct DominatingChain {
    int population = 0;
    double epsilon = 0.0;
    double beta = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    PollingRule rule;
    int band_lo = 0;  // first state of the central band
    int band_hi = 0;  // last state of the central band

    double jump_prob_down(int i) const;
    double holding_rate(int i) const;
};

// c1 = P(Z_{(1-eps)/2} <= m-d), c2 = P(Z_{(1-eps)/2} >= d).
//
// beta = (1-eps)c1 / ((1-eps)c1 + (1+eps)c2): the down-jump probability of
// the consensus chain at the top of the lower region, which lower-bounds it
// throughout that region and exceeds 1/2 for strict-majority rules.
// printed_variant swaps c1 and c2 in this formula (kept for comparison; it
// falls below 1/2 and cannot bound the chain from below).
DominatingChain build_dominating(int N, double epsilon, PollingRule rule,
                                 bool printed_variant = false);

// Gambler's-ruin probability of hitting j before 0 from i for a walk with
// down probability beta > 1/2: ((b/(1-b))^i - 1)/((b/(1-b))^j - 1), 1 if
// i >= j. Stable for large exponents.
double gambler_ruin_hit(long long i, long long j, double beta);

// Symmetric-walk limit beta = 1/2: i/j.
double gambler_ruin_hit_symmetric(long long i, long long j);

// Expected visits to state j before absorption at 0, conditional on ever
// visiting: n_j = (1 - ((1-b)/b)^j)/(2b - 1), always <= 1/(2b-1).
double expected_visits(long long j, double beta);

// (1/(2beta-1)) * (sum_{j=1}^{ceil((1-eps)N/2)-1} 1/(j c1) + eps/c2):
// the explicit O(log N) bound on the dominating chain's absorption time.
double tau0_upper_bound(const DominatingChain& chain);

// One replica: absorption time of Y (reaching 0 or N) from `start`.
double simulate_dominating_absorption(const DominatingChain& chain, int start,
                                      std::uint64_t seed, int replica);

// One replica: time for Y entered at the lower band edge to fall below the
// band or first reach its upper edge; the mean is exactly eps/c2.
double simulate_band_excursion(const DominatingChain& chain, std::uint64_t seed,
                               int replica);

struct DominationReport {
    int population = 0;
    double epsilon = 0.0;
    double beta = 0.0, c1 = 0.0, c2 = 0.0;
    double tau0_bound = 0.0;
    int start = 0;

    bool jump_prob_ok = false;  // folded X down-jump prob >= beta below the band
    bool exit_rate_ok = false;  // folded X exit rate >= dominating holding rate

    double mean_time_consensus = 0.0;    // folded X absorption
    double mean_time_dominating = 0.0;   // folded Y absorption
    double ks_one_sided = 0.0;           // sup (F_Y - F_X), small under domination
    double ks_critical_value = 0.0;
    bool cdf_dominance_ok = false;

    double band_excursion_mean = 0.0;
    double band_excursion_stderr = 0.0;
    double band_excursion_expected = 0.0;  // eps/c2

    // First-passage comparison below level floor(alpha*N), alpha = 0.1.
    int level = 0;
    double mean_level_consensus = 0.0;
    double mean_level_dominating = 0.0;
    double ks_one_sided_level = 0.0;
    bool level_dominance_ok = false;

    nlohmann::json to_json() const;
};

// Simulates the folded consensus process and the folded dominating process
// from the same start and checks every inequality the coupling lemma needs,
// plus the one-sided CDF comparison of absorption times.
DominationReport check_domination(int N, double epsilon, PollingRule rule,
                                  int start, int replicas, std::uint64_t seed,
                                  int threads = 1);

}  // namespace polling
