#include "polling/tails.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polling/log_math.hpp"
#include "polling/rules.hpp"

namespace polling {

namespace {

double binomial_pmf(int m, double x, int k) {
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    if (x == 1.0) return k == m ? 1.0 : 0.0;
    return std::exp(log_choose(m, k) + k * std::log(x) + (m - k) * std::log1p(-x));
}

void check_binomial_args(int m, double x, int d) {
    if (m < 0 || m > kMaxPollSize)
        throw std::domain_error("binomial tail: m out of range [0," +
                                std::to_string(kMaxPollSize) + "]");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binomial tail: x outside [0,1]");
    if (d < 0 || d > m)
        throw std::domain_error("binomial tail: d outside [0,m]");
}

}  // namespace

double binomial_tail_ge(int m, double x, int d) {
    check_binomial_args(m, x, d);
    if (d == 0) return 1.0;
    double s = 0.0;
    for (int k = m; k >= d; --k) s += binomial_pmf(m, x, k);
    return std::min(s, 1.0);
}

double binomial_tail_le(int m, double x, int d) {
    if (d < 0) return 0.0;
    if (d >= m) {
        check_binomial_args(m, x, m);
        return 1.0;
    }
    check_binomial_args(m, x, d);
    double s = 0.0;
    for (int k = 0; k <= d; ++k) s += binomial_pmf(m, x, k);
    return std::min(s, 1.0);
}

namespace {

double hypergeometric_tail(long long population, long long ones, int m, int d,
                           bool upper) {
    if (population < 0 || ones < 0 || ones > population)
        throw std::domain_error("hypergeometric tail: need 0 <= ones <= population");
    if (m < 0 || m > population || m > kMaxPollSize)
        throw std::domain_error("hypergeometric tail: m out of range");
    if (d < 0 || d > m)
        throw std::domain_error("hypergeometric tail: d outside [0,m]");

    if (upper && d == 0) return 1.0;
    const long long zeros = population - ones;
    const int k_min = static_cast<int>(std::max<long long>(0, m - zeros));
    const int k_max = static_cast<int>(std::min<long long>(m, ones));
    const double log_denom = log_choose(static_cast<double>(population), m);

    double s = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        if (upper ? (k < d) : (k > d)) continue;
        s += std::exp(log_choose(static_cast<double>(ones), k) +
                      log_choose(static_cast<double>(zeros), m - k) - log_denom);
    }
    return std::min(s, 1.0);
}

}  // namespace

double hypergeometric_tail_ge(long long population, long long ones, int m, int d) {
    return hypergeometric_tail(population, ones, m, d, /*upper=*/true);
}

double hypergeometric_tail_le(long long population, long long ones, int m, int d) {
    if (d < 0) return 0.0;
    return hypergeometric_tail(population, ones, m, std::min(d, m), /*upper=*/false);
}

}  // namespace polling
