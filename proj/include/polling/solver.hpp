#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polling/chain.hpp"

namespace polling {

// Exact quantities for one chain: hitting probabilities of state N and
// expected absorption / alpha-proximity times, indexed by initial state.
struct SolveResult {
    int population = 0;
    double alpha = 0.0;               // threshold used for t_alpha (if filled)
    std::vector<double> log_resistor; // log R_i for i in 1..N, R_1 = 1
    std::vector<double> h;            // size N+1
    std::vector<double> t0;           // size N+1, empty until expected_times
    std::vector<double> t_alpha;      // size N+1, empty until expected_times
};

// Series-resistor solution of the first-step recursion, accumulated in log
// space: log R_{i+1} = log R_i + log(down[i]) - log(up[i]),
// h[i] = exp(logsumexp(log R_1..i) - logsumexp(log R_1..N)).
SolveResult hitting_probabilities(const ChainModel& chain);

// Closed form for the (m,m) algorithm, m >= 2:
//   h(i) = sum_{k<i} C(N-1,k)^(m-1) / sum_{k<N} C(N-1,k)^(m-1),
// evaluated with log-gamma binomial coefficients and logsumexp.
double hitting_probability_mm_closed_form(int N, int m, int i);

// Linear interpolation of h between grid points alpha*N.
double h_interpolated(const SolveResult& result, double alpha);

// Fills t0 (expected time to absorption at 0 or N) and t_alpha (expected time
// to exit (alpha*N, (1-alpha)*N)) by a Thomas-style tridiagonal solve of the
// first-step system in jump-chain + holding-time form.
void expected_times(const ChainModel& chain, double alpha, SolveResult& result);

// Convenience: h + t0 + t_alpha in one call.
SolveResult solve_chain(const ChainModel& chain, double alpha);

// Absorbing band edges for the alpha-proximity time: {i <= lo} u {i >= hi}.
int alpha_lower_index(int N, double alpha);
int alpha_upper_index(int N, double alpha);

// CSV with columns i, i/N, h, t0, t_alpha; `header_comment` lines are emitted
// first, each prefixed with "# ".
void write_solve_csv(std::ostream& out, const SolveResult& result,
                     const std::vector<std::string>& header_comment);

}  // namespace polling
