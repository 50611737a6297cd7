#pragma once

#include <vector>

#include "polling/rules.hpp"

namespace polling {

// The number of nodes in state 1 evolves as a birth-death chain on {0,...,N}
// with absorbing boundaries. Rates are tabulated once per (N, rules, mode).
struct ChainModel {
    int population = 0;  // N
    RuleDistribution rules = RuleDistribution::single({1, 1});
    SamplingMode mode = SamplingMode::WithReplacement;
    bool exclude_self = false;  // without-replacement variant only

    std::vector<double> up_rate;    // q_{n,n+1}, size N+1
    std::vector<double> down_rate;  // q_{n,n-1}, size N+1

    double total_rate(int n) const { return up_rate[n] + down_rate[n]; }
};

// up_rate[n]   = (N-n) * E[ P(Z_{M,n/N} >= D) ]
// down_rate[n] = n     * E[ P(Z_{M,n/N} <= M-D) ]
// Under WithoutReplacement the binomial tails become hypergeometric tails; by
// default a node's sample population is all N nodes (it may draw itself, as
// in the update algorithm); exclude_self switches to a population of the
// other N-1 nodes.
ChainModel build_chain(int N, const RuleDistribution& rules, SamplingMode mode,
                       bool exclude_self = false);

}  // namespace polling
