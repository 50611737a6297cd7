#include "polling/solver.hpp"

#include <cassert>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "polling/log_math.hpp"

namespace polling {

namespace {

// Grid index of a*N, tolerant of values like (1/3)*3000 landing a few ulp
// off an integer.
double snap(double v) {
    const double r = std::round(v);
    return std::abs(v - r) < 1e-9 * std::max(1.0, std::abs(v)) ? r : v;
}

void check_interior_rates(const ChainModel& chain) {
    for (int n = 1; n < chain.population; ++n)
        if (!(chain.up_rate[n] > 0.0) || !(chain.down_rate[n] > 0.0))
            throw std::invalid_argument(
                "solver requires strictly positive interior rates (state " +
                std::to_string(n) + ")");
}

}  // namespace

int alpha_lower_index(int N, double alpha) {
    return static_cast<int>(std::floor(snap(alpha * N)));
}

int alpha_upper_index(int N, double alpha) {
    return static_cast<int>(std::ceil(snap((1.0 - alpha) * N)));
}

SolveResult hitting_probabilities(const ChainModel& chain) {
    const int N = chain.population;
    check_interior_rates(chain);

    SolveResult result;
    result.population = N;
    result.log_resistor.assign(N + 1, 0.0);  // index 1..N, R_1 = 1
    for (int i = 1; i < N; ++i)
        result.log_resistor[i + 1] = result.log_resistor[i] +
                                     std::log(chain.down_rate[i]) -
                                     std::log(chain.up_rate[i]);

    // Prefix logsumexp of resistances gives the voltages.
    std::vector<double> prefix(N + 1, kNegInf);
    double acc = kNegInf;
    for (int i = 1; i <= N; ++i) {
        acc = log_add(acc, result.log_resistor[i]);
        prefix[i] = acc;
    }
    result.h.assign(N + 1, 0.0);
    result.h[N] = 1.0;
    for (int i = 1; i < N; ++i) result.h[i] = std::exp(prefix[i] - prefix[N]);
    return result;
}

double hitting_probability_mm_closed_form(int N, int m, int i) {
    if (m < 2) throw std::invalid_argument("closed form requires m >= 2");
    if (i < 0 || i > N) throw std::invalid_argument("state index outside [0,N]");
    if (i == 0) return 0.0;
    double num = kNegInf, denom = kNegInf;
    for (int k = 0; k <= N - 1; ++k) {
        const double term = (m - 1) * log_choose(N - 1, k);
        denom = log_add(denom, term);
        if (k <= i - 1) num = log_add(num, term);
    }
    return std::exp(num - denom);
}

double h_interpolated(const SolveResult& result, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("alpha outside [0,1]");
    const int N = result.population;
    const double a = snap(alpha * N);
    const int lo = static_cast<int>(std::floor(a));
    const int hi = static_cast<int>(std::ceil(a));
    if (lo == hi) return result.h[lo];
    return (a - lo) * result.h[hi] + (hi - a) * result.h[lo];
}

namespace {

// Solves t[i] = hold[i] + p_up[i] t[i+1] + p_down[i] t[i-1] on states
// first..last with t = 0 just outside, via forward elimination / back
// substitution. Writes into t[first..last].
void solve_band(const ChainModel& chain, int first, int last, std::vector<double>& t) {
    if (first > last) return;
    const int n = last - first + 1;
    std::vector<double> c(n), dvec(n);  // superdiagonal and rhs after elimination
    for (int k = 0; k < n; ++k) {
        const int i = first + k;
        const double total = chain.total_rate(i);
        assert(total > 0.0);
        const double hold = 1.0 / total;
        const double pu = chain.up_rate[i] * hold;
        const double pd = chain.down_rate[i] * hold;
        // Row: -pd * t[i-1] + t[i] - pu * t[i+1] = hold
        if (k == 0) {
            c[k] = -pu;
            dvec[k] = hold;
        } else {
            const double denom = 1.0 - (-pd) * c[k - 1];
            assert(denom > 0.0);
            c[k] = -pu / denom;
            dvec[k] = (hold + pd * dvec[k - 1]) / denom;
        }
    }
    t[last] = dvec[n - 1];
    for (int k = n - 2; k >= 0; --k) t[first + k] = dvec[k] - c[k] * t[first + k + 1];
}

}  // namespace

void expected_times(const ChainModel& chain, double alpha, SolveResult& result) {
    const int N = chain.population;
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw std::domain_error("alpha must lie in [0, 1/2)");
    check_interior_rates(chain);

    result.population = N;
    result.alpha = alpha;
    result.t0.assign(N + 1, 0.0);
    solve_band(chain, 1, N - 1, result.t0);

    result.t_alpha.assign(N + 1, 0.0);
    const int lo = alpha_lower_index(N, alpha);
    const int hi = alpha_upper_index(N, alpha);
    solve_band(chain, lo + 1, hi - 1, result.t_alpha);
}

SolveResult solve_chain(const ChainModel& chain, double alpha) {
    SolveResult result = hitting_probabilities(chain);
    expected_times(chain, alpha, result);
    return result;
}

void write_solve_csv(std::ostream& out, const SolveResult& result,
                     const std::vector<std::string>& header_comment) {
    for (const auto& line : header_comment) out << "# " << line << "\n";
    out << "i,x,h,t0,t_alpha\n";
    const int N = result.population;
    out.precision(17);
    for (int i = 0; i <= N; ++i) {
        out << i << ',' << static_cast<double>(i) / N << ',' << result.h[i] << ','
            << (result.t0.empty() ? 0.0 : result.t0[i]) << ','
            << (result.t_alpha.empty() ? 0.0 : result.t_alpha[i]) << "\n";
    }
}

}  // namespace polling
