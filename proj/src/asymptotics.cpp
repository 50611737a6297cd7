#include "polling/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace polling {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

double kl_bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p outside [0,1]");
    const double entropy = -xlogx(p) - xlogx(1.0 - p);
    return std::log(2.0) - entropy;
}

double drift_ratio(double x, const RuleDistribution& rules) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("x outside [0,1]");
    if (x == 0.0) {
        // E[p2(x)] ~ x * sum_{d_j=1} w_j m_j as x -> 0, while E[p1] -> 1.
        double slope = 0.0;
        for (const auto& e : rules.entries())
            if (e.rule.d == 1) slope += e.weight * e.rule.m;
        return slope > 0.0 ? 1.0 / slope : kInf;
    }
    if (x == 1.0) {
        const double at_zero = drift_ratio(0.0, rules);
        return at_zero == kInf ? 0.0 : 1.0 / at_zero;
    }
    const double num = x * rules.expected_down_tail(x);
    const double den = (1.0 - x) * rules.expected_up_tail(x);
    if (den == 0.0) {
        if (num == 0.0)
            throw std::logic_error("drift ratio 0/0 at interior x; invalid rules");
        return kInf;
    }
    return num / den;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) < 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double exponent_integral(double alpha, const RuleDistribution& rules) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::domain_error("alpha must lie in (0, 1/2]");
    if (!rules.strict_majority_all())
        throw std::invalid_argument(
            "exponent integral requires 2d > m for every rule");
    if (alpha == 0.5) return 0.0;
    auto f = [&rules](double x) { return std::log(drift_ratio(x, rules)); };
    return integrate(f, alpha, 0.5, 1e-9);
}

double theorem1_bound(int N, int m, double alpha, double c) {
    if (m < 2) throw std::invalid_argument("theorem1_bound requires m >= 2");
    return c * std::exp(-(N - 1.0) * (m - 1.0) * kl_bernoulli(alpha));
}

double mixture_rate_I(double x, double p) {
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("p must lie in [0,1)");
    const double q = 1.0 - p;
    return (x - 1.0 / q) * std::log(1.0 - q * x) -
           (x + p / q) * std::log(p + q * x);
}

RuleDistribution mixture_11_22(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p outside [0,1]");
    if (p == 0.0) return RuleDistribution::single({2, 2});
    if (p == 1.0) return RuleDistribution::single({1, 1});
    return RuleDistribution({{{1, 1}, p}, {{2, 2}, 1.0 - p}});
}

}  // namespace polling
