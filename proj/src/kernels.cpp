#include "zygfrac/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zygfrac {

namespace {

constexpr double kInvLn2 = 1.4426950408889634073599246810019;  // 1/ln 2
constexpr double kFlushLog2 = 500.0;

// log2(2^t + 2^{-t}) evaluated without overflow: = |t| + log2(1 + 2^{-2|t|}).
double log2_cosh_like(double t) {
    const double a = std::abs(t);
    return a + std::log1p(std::exp2(-2.0 * a)) * kInvLn2;
}

double log2_abs_checked(double v, const char* name) {
    if (v == 0.0)
        throw std::domain_error(std::string("kernel evaluated on singular set: ") + name +
                                " vanishes");
    if (!std::isfinite(v))
        throw std::domain_error(std::string("kernel evaluated at non-finite ") + name);
    return std::log2(std::abs(v));
}

}  // namespace

KernelSpec KernelSpec::zygmund(const OperatorParams& prm) {
    validate(prm);
    return KernelSpec{KernelVariant::zygmund, prm.alpha, prm.alpha, prm.beta, 1.0};
}

KernelSpec KernelSpec::zygmund_theta(const OperatorParams& prm, double vartheta) {
    validate(prm);
    if (!(vartheta > 0.0))
        throw std::invalid_argument("zygmund_theta: bracket exponent must be positive");
    return KernelSpec{KernelVariant::zygmund_theta, prm.alpha, prm.alpha, prm.beta, vartheta};
}

KernelSpec KernelSpec::three_param(const ThreeParamExponents& e) {
    validate(e);
    return KernelSpec{KernelVariant::three_param, e.a1, e.a2, e.a3, 1.0};
}

double log2_bracket(const Vec3& x) {
    const double l1 = log2_abs_checked(x[0], "x1");
    const double l2 = log2_abs_checked(x[1], "x2");
    const double l3 = log2_abs_checked(x[2], "x3");
    return log2_cosh_like(l1 + l2 - l3);
}

double log2_kernel(const KernelSpec& spec, const Vec3& x) {
    const double l1 = log2_abs_checked(x[0], "x1");
    const double l2 = log2_abs_checked(x[1], "x2");
    const double l3 = log2_abs_checked(x[2], "x3");
    const double t = l1 + l2 - l3;
    return (spec.a1 - 1.0) * l1 + (spec.a2 - 1.0) * l2 + (spec.a3 - 1.0) * l3 -
           spec.theta * log2_cosh_like(t);
}

KernelEval eval_kernel_checked(const KernelSpec& spec, const Vec3& x) {
    const double lv = log2_kernel(spec, x);
    if (lv > kFlushLog2)
        return {std::numeric_limits<double>::infinity(), KernelFlag::flushed_inf};
    if (lv < -kFlushLog2) return {0.0, KernelFlag::flushed_zero};
    return {std::exp2(lv), KernelFlag::ok};
}

double eval_kernel(const KernelSpec& spec, const Vec3& x) {
    return eval_kernel_checked(spec, x).value;
}

double eval_kernel_1d(double alpha, double x) {
    if (x == 0.0) throw std::domain_error("1d kernel evaluated at its singularity");
    return std::exp2((alpha - 1.0) * std::log2(std::abs(x)));
}

std::pair<double, double> kernel_dilation_factor(const KernelSpec& spec, int s, const Vec3& x) {
    // tau_s scales coordinates 2 and 3 by 2^{-s}; the bracket is invariant,
    // so the kernel picks up 2^{s(1-a2)} 2^{s(1-a3)}.
    const Vec3 xs{x[0], std::ldexp(x[1], -s), std::ldexp(x[2], -s)};
    const double lhs = eval_kernel(spec, xs);
    const double factor = std::exp2(static_cast<double>(s) * (2.0 - spec.a2 - spec.a3));
    return {lhs, factor * eval_kernel(spec, x)};
}

std::pair<double, double> kernel_pointwise_compare(const OperatorParams& prm, double vartheta,
                                                   const Vec3& x) {
    if (!(vartheta > 0.0 && vartheta <= 1.0))
        throw std::invalid_argument("kernel_pointwise_compare: vartheta must lie in (0, 1]");
    return {eval_kernel(KernelSpec::zygmund(prm), x),
            eval_kernel(KernelSpec::zygmund_theta(prm, vartheta), x)};
}

double shell_reference_value(double alpha, double beta, double theta, int ell, int j, int k) {
    const double e1 = static_cast<double>(j);
    const double e2 = static_cast<double>(j - ell);
    const double e3 = static_cast<double>(j + (j - ell) - k);
    const double lv = (alpha - 1.0) * e1 + (alpha - 1.0) * e2 + (beta - 1.0) * e3 -
                      theta * log2_cosh_like(static_cast<double>(k));
    return std::exp2(lv);
}

std::pair<double, double> shell_comparability_bounds(double alpha, double beta, double theta) {
    // Within one shell each log2|x_i| exceeds its reference exponent by
    // u_i in [0,1), and the bracket log-argument differs from k by
    // u1 + u2 - u3 in (-1,2); |d/dt log2(2^t+2^{-t})| < 1 bounds the bracket
    // contribution by 2*theta either way.
    const double a[3] = {alpha, alpha, beta};
    double lo = 0.0, up = 0.0;
    for (double ai : a) {
        lo += std::min(0.0, ai - 1.0);
        up += std::max(0.0, ai - 1.0);
    }
    return {std::exp2(lo - 2.0 * theta), std::exp2(up + 2.0 * theta)};
}

}  // namespace zygfrac
