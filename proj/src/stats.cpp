#include "polling/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polling {

MeanStderr mean_stderr(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return {};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (n == 1) return {mean, 0.0, 1};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / (n - 1);
    return {mean, std::sqrt(var / n), n};
}

Interval wilson_interval(std::size_t successes, std::size_t n) {
    if (n == 0) throw std::invalid_argument("wilson_interval: empty sample");
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("linear_fit: need two equal-length samples, n >= 2");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate x sample");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        rss += r * r;
    }
    fit.residual_norm = std::sqrt(rss);
    fit.r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    return fit;
}

namespace {

double ks_scan(std::span<const double> a, std::span<const double> b, bool one_sided) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks statistic: empty sample");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double stat = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double t = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= t) ++i;
        while (j < sb.size() && sb[j] <= t) ++j;
        const double diff = j / nb - i / na;  // F_b - F_a
        stat = std::max(stat, one_sided ? diff : std::abs(diff));
    }
    return stat;
}

}  // namespace

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    return ks_scan(a, b, false);
}

double ks_statistic_one_sided(std::span<const double> a, std::span<const double> b) {
    return ks_scan(a, b, true);
}

double ks_critical(std::size_t n, std::size_t m, double significance, bool one_sided) {
    if (n == 0 || m == 0 || !(significance > 0.0 && significance < 1.0))
        throw std::invalid_argument("ks_critical: bad arguments");
    const double tail = one_sided ? significance : significance / 2.0;
    const double c = std::sqrt(-0.5 * std::log(tail));
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace polling
