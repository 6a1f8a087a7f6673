#pragma once
// Admissible parameter tuples for the fractional integral operators and the
// exponent bookkeeping shared by every experiment.
//
// A tuple (alpha, beta, theta, p, q) is admissible when
//   -1 < alpha < 1,  -1 < beta < 1,  alpha + beta > 0,  theta > 0,
//   and additionally -theta < beta < theta whenever theta <= 1;
//   1 < p < q < infinity.
// The L^p -> L^q map is scale-consistent ("homogeneous") exactly when
//   1/q = 1/p - (alpha + beta)/2,
// mirroring the classical one-parameter relation 1/q = 1/p - alpha.

#include <string>

namespace zygfrac {

struct OperatorParams {
    double alpha = 0.0;
    double beta = 0.0;
    double theta = 1.0;  // bracket exponent; theta = 1 is the base kernel
    double p = 0.0;
    double q = 0.0;
};

// Throws std::invalid_argument naming the first violated inequality.
void validate(const OperatorParams& prm);

// True when 1/q = 1/p - (alpha+beta)/2 within tol.
bool is_homogeneous(const OperatorParams& prm, double tol = 1e-12);

// Solve 1/q = 1/p - (alpha+beta)/2 for p given q (exact, used by experiment
// setups so that the homogeneity flag is exact rather than within-tolerance).
double homogeneous_p(double alpha, double beta, double q);

// min{alpha + beta, 2/q}: the decay exponent available to the single-scale
// estimates.
double sigma_exponent(const OperatorParams& prm);

// Auxiliary bracket exponent used by the pointwise domination route.  For
// alpha > 0 returns the midpoint of the feasible interval
//   ( max(0, 1/p - beta), alpha ),
// which is exactly where both strict constraints
//   vartheta < alpha   and   beta - 1/p + vartheta > 0
// hold; for alpha <= 0 the route is not used and 1 is returned.  Requires an
// admissible homogeneous tuple; throws if the interval is empty (cannot
// happen for admissible homogeneous parameters, asserted anyway).
double compute_vartheta(const OperatorParams& prm);

// Exponents of the three-parameter kernel variant; each in (0,1) and
// additionally alpha2 = alpha3 is required when comparing against the
// two-parameter kernel (not enforced here).
struct ThreeParamExponents {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

void validate(const ThreeParamExponents& e);

}  // namespace zygfrac
