#include "polling/chain.hpp"

#include <stdexcept>
#include <string>

#include "polling/tails.hpp"

namespace polling {

ChainModel build_chain(int N, const RuleDistribution& rules, SamplingMode mode,
                       bool exclude_self) {
    if (N < 2) throw std::invalid_argument("population N must be >= 2");
    if (mode == SamplingMode::WithoutReplacement && rules.max_poll_size() > N - 1)
        throw std::invalid_argument(
            "without-replacement sampling requires m <= N-1 for every rule");
    if (mode == SamplingMode::WithReplacement && exclude_self)
        throw std::invalid_argument("exclude_self applies only to without-replacement");

    ChainModel chain{N, rules, mode, exclude_self,
                     std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};

    for (int n = 1; n < N; ++n) {
        double up_tail = 0.0;    // E[p2] at fraction n/N
        double down_tail = 0.0;  // E[p1]
        if (mode == SamplingMode::WithReplacement) {
            const double x = static_cast<double>(n) / N;
            up_tail = rules.expected_up_tail(x);
            down_tail = rules.expected_down_tail(x);
        } else {
            for (const auto& e : rules.entries()) {
                const int m = e.rule.m, d = e.rule.d;
                if (exclude_self) {
                    // Updating node removed from its own sample population.
                    up_tail += e.weight * hypergeometric_tail_ge(N - 1, n, m, d);
                    down_tail += e.weight * hypergeometric_tail_le(N - 1, n - 1, m, m - d);
                } else {
                    up_tail += e.weight * hypergeometric_tail_ge(N, n, m, d);
                    down_tail += e.weight * hypergeometric_tail_le(N, n, m, m - d);
                }
            }
        }
        chain.up_rate[n] = (N - n) * up_tail;
        chain.down_rate[n] = n * down_tail;
    }
    return chain;
}

}  // namespace polling
