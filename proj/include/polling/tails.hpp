#pragma once

namespace polling {

// P(Z >= d) for Z ~ Binomial(m, x). Direct summation; m <= kMaxPollSize.
double binomial_tail_ge(int m, double x, int d);

// P(Z <= d) for Z ~ Binomial(m, x). d < 0 gives 0, d >= m gives 1.
double binomial_tail_le(int m, double x, int d);

// P(at least d ones in a size-m draw without replacement from a population
// of `population` with `ones` ones).
double hypergeometric_tail_ge(long long population, long long ones, int m, int d);

// Lower tail of the same hypergeometric law.
double hypergeometric_tail_le(long long population, long long ones, int m, int d);

}  // namespace polling
