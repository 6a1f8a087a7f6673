#pragma once
// Kernel family for fractional integration adapted to the two-parameter
// dilation group (x1, x2, x3) -> (d1 x1, d2 x2, d1 d2 x3).
//
// The base kernel on R^3 is
//
//   V(x) = |x1|^{alpha-1} |x2|^{alpha-1} |x3|^{beta-1} * B(x)^{-theta},
//   B(x) = |x1||x2|/|x3| + |x3|/(|x1||x2|),
//
// with theta = 1 for the operator itself and a smaller bracket exponent
// theta = vartheta in (0,1] for the pointwise-domination route (B >= 2, so
// lowering the bracket exponent only increases the kernel).  The bracket B
// is invariant under the dilation group and under the shear
// tau_s x = (x1, 2^{-s} x2, 2^{-s} x3), which gives the exact identity
//
//   V(tau_s x) = 2^{s(1-alpha)} 2^{s(1-beta)} V(x).
//
// A three-exponent variant |x1|^{a1-1}|x2|^{a2-1}|x3|^{a3-1} B^{-1} and the
// classical 1D kernel |x|^{alpha-1} are provided for baselines.
//
// Everything is evaluated in log2 space:
//   log2 V = (alpha-1) log2|x1| + (alpha-1) log2|x2| + (beta-1) log2|x3|
//            - theta * log2 B,
//   log2 B = |t| + log1p(2^{-2|t|}) / ln 2,   t = log2|x1| + log2|x2| - log2|x3|,
// which is immune to overflow of the intermediate products and loses no
// precision when |t| is large.  Results whose log2 magnitude exceeds 500 are
// flushed to 0 / +infinity with an explicit flag instead of silently
// denormalizing.

#include <array>
#include <utility>

#include "zygfrac/geometry.hpp"
#include "zygfrac/params.hpp"

namespace zygfrac {

enum class KernelVariant {
    zygmund,        // V with theta = 1
    zygmund_theta,  // V with explicit bracket exponent
    three_param,    // |x1|^{a1-1}|x2|^{a2-1}|x3|^{a3-1} B^{-1}
};

struct KernelSpec {
    KernelVariant variant = KernelVariant::zygmund;
    // Exponents on |x1|, |x2|, |x3| respectively (a1 = a2 = alpha and
    // a3 = beta for the two-parameter variants).
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double theta = 1.0;

    static KernelSpec zygmund(const OperatorParams& prm);
    static KernelSpec zygmund_theta(const OperatorParams& prm, double vartheta);
    static KernelSpec three_param(const ThreeParamExponents& e);
};

enum class KernelFlag { ok, flushed_zero, flushed_inf };

struct KernelEval {
    double value = 0.0;
    KernelFlag flag = KernelFlag::ok;
};

// log2 of the Zygmund bracket B(x); requires nonzero coordinates.
double log2_bracket(const Vec3& x);

// log2 V(x); throws std::domain_error when any coordinate vanishes.
double log2_kernel(const KernelSpec& spec, const Vec3& x);

KernelEval eval_kernel_checked(const KernelSpec& spec, const Vec3& x);
double eval_kernel(const KernelSpec& spec, const Vec3& x);

// Classical 1D kernel |x|^{alpha-1}; throws std::domain_error at x = 0.
double eval_kernel_1d(double alpha, double x);

// Both sides of the shear identity V(tau_s x) = 2^{s(2-a2-a3)} V(x):
// first = kernel at tau_s x, second = predicted scaling of kernel at x.
std::pair<double, double> kernel_dilation_factor(const KernelSpec& spec, int s, const Vec3& x);

// (V^{alpha beta}(x), V^{alpha beta vartheta}(x)); the second dominates the
// first pointwise for 0 < vartheta <= 1 since B >= 2.
std::pair<double, double> kernel_pointwise_compare(const OperatorParams& prm, double vartheta,
                                                   const Vec3& x);

// Reference value of the kernel on the dyadic shell (ell, j, k): the kernel
// evaluated with |x1| = 2^j, |x2| = 2^{j-ell}, |x3| = 2^{j+(j-ell)-k} in the
// power factors and bracket value 2^k + 2^{-k}.
double shell_reference_value(double alpha, double beta, double theta, int ell, int j, int k);

// Multiplicative comparability interval [lower, upper] such that for every x
// in shell (ell, j, k):  lower <= V(x)/REF <= upper.  Derived by interval
// arithmetic: on one shell, j <= log2|x1| < j+1 (same per axis) and the
// bracket log-argument t - k ranges over (-1, 2).  Independent of (ell,j,k).
std::pair<double, double> shell_comparability_bounds(double alpha, double beta, double theta);

}  // namespace zygfrac
