#pragma once

#include <cstddef>
#include <span>

namespace polling {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

MeanStderr mean_stderr(std::span<const double> values);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval for a binomial proportion at 95% confidence.
Interval wilson_interval(std::size_t successes, std::size_t n);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double residual_norm = 0.0;  // sqrt of the residual sum of squares
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// One-sided version: sup (F_b - F_a). Small when a is stochastically smaller
// than b (its CDF pointwise above b's).
double ks_statistic_one_sided(std::span<const double> a, std::span<const double> b);

// Large-sample critical value: reject equality (or ordering, one-sided) at
// `significance` when the statistic exceeds this.
double ks_critical(std::size_t n, std::size_t m, double significance, bool one_sided);

}  // namespace polling
