#pragma once

#include "polling/rules.hpp"

namespace polling {

// D(p; 1/2) = log 2 - H(p), natural logarithms, with 0 log 0 := 0.
double kl_bernoulli(double p);

// Drift ratio
//   g~(x) = x E[P(Z_{M,x} <= M-D)] / ((1-x) E[P(Z_{M,x} >= D)]),
// the down-step/up-step probability ratio at fraction x of state-1 nodes.
// Returns +inf at x = 0 when every rule needs at least two disagreements;
// endpoints are handled by their limits.
double drift_ratio(double x, const RuleDistribution& rules);

// Integral of log g~ over [alpha, 1/2]; the upper bound on the wrong-consensus
// error exponent. Requires every rule to be a strict-majority rule. Adaptive
// Simpson quadrature, absolute tolerance ~1e-9.
double exponent_integral(double alpha, const RuleDistribution& rules);

// c * exp(-(N-1)(m-1) D(alpha; 1/2)), the (m,m) error-probability bound.
double theorem1_bound(int N, int m, double alpha, double c);

// Antiderivative of log g~ for the {(1,1) w.p. p, (2,2) w.p. 1-p} mixture:
//   I(x) = (x - 1/(1-p)) log(1 - (1-p)x) - (x + p/(1-p)) log(p + (1-p)x).
// The exponent bound for the mixture is I(1/2) - I(x).
double mixture_rate_I(double x, double p);

// The {(1,1) w.p. p, (2,2) w.p. 1-p} distribution; degenerate at p = 0 or 1.
RuleDistribution mixture_11_22(double p);

}  // namespace polling
