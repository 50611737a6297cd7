// Test-only brute-force oracle: dense Gaussian elimination on the full
// first-step linear systems for hitting probabilities and absorption times.
// Deliberately independent of the resistor / tridiagonal implementation.
#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "polling/chain.hpp"

namespace oracle {

inline std::vector<double> gaussian_solve(std::vector<std::vector<double>> a,
                                          std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        assert(std::abs(a[col][col]) > 1e-300);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// h[i] = p_up h[i+1] + p_down h[i-1], h[0]=0, h[N]=1.
inline std::vector<double> hitting_probs(const polling::ChainModel& chain) {
    const int N = chain.population;
    const std::size_t n = N - 1;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (int i = 1; i < N; ++i) {
        const double total = chain.total_rate(i);
        const double pu = chain.up_rate[i] / total;
        const double pd = chain.down_rate[i] / total;
        const std::size_t r = i - 1;
        a[r][r] = 1.0;
        if (i + 1 < N)
            a[r][r + 1] = -pu;
        else
            b[r] += pu;  // h[N] = 1
        if (i - 1 > 0) a[r][r - 1] = -pd;
    }
    const auto interior = gaussian_solve(a, b);
    std::vector<double> h(N + 1, 0.0);
    h[N] = 1.0;
    for (int i = 1; i < N; ++i) h[i] = interior[i - 1];
    return h;
}

// t[i] = 1/rate(i) + p_up t[i+1] + p_down t[i-1], t[0]=t[N]=0.
inline std::vector<double> absorption_times(const polling::ChainModel& chain) {
    const int N = chain.population;
    const std::size_t n = N - 1;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (int i = 1; i < N; ++i) {
        const double total = chain.total_rate(i);
        const std::size_t r = i - 1;
        a[r][r] = 1.0;
        b[r] = 1.0 / total;
        if (i + 1 < N) a[r][r + 1] = -chain.up_rate[i] / total;
        if (i - 1 > 0) a[r][r - 1] = -chain.down_rate[i] / total;
    }
    const auto interior = gaussian_solve(a, b);
    std::vector<double> t(N + 1, 0.0);
    for (int i = 1; i < N; ++i) t[i] = interior[i - 1];
    return t;
}

}  // namespace oracle
