// Kernel evaluation: frozen point values, agreement between the log-space
// path and a direct power-product computation, the exact shear identity,
// pointwise domination by the smaller bracket exponent, flush behavior and
// the per-shell comparability interval.

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "reference.hpp"
#include "zygfrac/dyadic.hpp"
#include "zygfrac/kernels.hpp"
#include "zygfrac/params.hpp"
#include "zygfrac/rng.hpp"

using namespace zygfrac;

namespace {
const OperatorParams kCanon{0.25, 0.25, 1.0, homogeneous_p(0.25, 0.25, 6.0), 6.0};
}

TEST_CASE("frozen kernel values") {
    const KernelSpec spec = KernelSpec::zygmund(kCanon);
    // At (1,1,1): all power factors are 1 and the bracket is 1 + 1 = 2.
    CHECK(eval_kernel(spec, {1, 1, 1}) == 0.5);
    CHECK(log2_kernel(spec, {1, 1, 1}) == -1.0);
    // At (1/2,1/2,1/4): power factors 2^{3/4} 2^{3/4} 2^{3/2}, bracket 2.
    CHECK(log2_kernel(spec, {0.5, 0.5, 0.25}) == doctest::Approx(2.0).epsilon(1e-15));
    // Sign-independent.
    CHECK(eval_kernel(spec, {2, -1, -2}) == eval_kernel(spec, {2, 1, 2}));
}

TEST_CASE("log-space evaluation matches the direct power product") {
    const KernelSpec spec = KernelSpec::zygmund(kCanon);
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
        Vec3 x;
        for (int a = 0; a < 3; ++a) x[a] = rng.sign() * std::exp2(rng.uniform(-8.0, 8.0));
        const double m1 = std::abs(x[0]), m2 = std::abs(x[1]), m3 = std::abs(x[2]);
        const double bracket = m1 * m2 / m3 + m3 / (m1 * m2);
        const double direct = std::pow(m1, kCanon.alpha - 1.0) * std::pow(m2, kCanon.alpha - 1.0) *
                              std::pow(m3, kCanon.beta - 1.0) / bracket;
        CHECK(eval_kernel(spec, x) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(log2_bracket(x) == doctest::Approx(std::log2(bracket)).epsilon(1e-13));
    }
}

TEST_CASE("three-exponent kernel is the power product with one bracket") {
    const KernelSpec spec = KernelSpec::three_param(ThreeParamExponents{0.3, 0.6, 0.2});
    Rng rng(77);
    for (int i = 0; i < 500; ++i) {
        Vec3 x;
        for (int a = 0; a < 3; ++a) x[a] = rng.sign() * std::exp2(rng.uniform(-6.0, 6.0));
        const double m1 = std::abs(x[0]), m2 = std::abs(x[1]), m3 = std::abs(x[2]);
        const double bracket = m1 * m2 / m3 + m3 / (m1 * m2);
        const double direct = std::pow(m1, -0.7) * std::pow(m2, -0.4) * std::pow(m3, -0.8) / bracket;
        CHECK(eval_kernel(spec, x) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("one-dimensional kernel") {
    CHECK(eval_kernel_1d(0.5, 4.0) == 0.5);
    CHECK(eval_kernel_1d(0.5, -4.0) == 0.5);
    CHECK_THROWS_AS(eval_kernel_1d(0.5, 0.0), std::domain_error);
}

TEST_CASE("zero coordinates are rejected") {
    const KernelSpec spec = KernelSpec::zygmund(kCanon);
    CHECK_THROWS_AS(log2_kernel(spec, {0.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(eval_kernel(spec, {1.0, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("shear identity holds to relative 1e-12 across wide shears") {
    const KernelSpec spec = KernelSpec::zygmund(kCanon);
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        Vec3 x;
        for (int a = 0; a < 3; ++a) x[a] = rng.sign() * std::exp2(rng.uniform(-10.0, 10.0));
        const int s = static_cast<int>(rng.uniform_int(-10, 10));
        const auto [lhs, rhs] = kernel_dilation_factor(spec, s, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("smaller bracket exponent dominates pointwise") {
    Rng rng(9);
    for (double vt : {5.0 / 24.0, 0.5, 1.0}) {
        for (int i = 0; i < 2000; ++i) {
            Vec3 x;
            for (int a = 0; a < 3; ++a) x[a] = rng.sign() * std::exp2(rng.uniform(-12.0, 12.0));
            const auto [base, dominating] = kernel_pointwise_compare(kCanon, vt, x);
            CHECK(base <= dominating);
        }
    }
    CHECK_THROWS_AS(kernel_pointwise_compare(kCanon, 0.0, Vec3{1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernel_pointwise_compare(kCanon, 1.5, Vec3{1, 1, 1}),
                    std::invalid_argument);
}

TEST_CASE("extreme magnitudes flush with a flag instead of denormalizing") {
    const KernelSpec spec = KernelSpec::zygmund(kCanon);
    const KernelEval tiny = eval_kernel_checked(spec, {1e-120, 1e-120, 1e120});
    CHECK(tiny.flag == KernelFlag::flushed_zero);
    CHECK(tiny.value == 0.0);
    // All three magnitudes tiny: the negative power exponents win over the
    // bracket and push log2 V far above the flush threshold.
    const KernelEval huge = eval_kernel_checked(spec, {1e-300, 1e-300, 1e-300});
    CHECK(huge.flag == KernelFlag::flushed_inf);
    CHECK(std::isinf(huge.value));
    const KernelEval ok = eval_kernel_checked(spec, {1.0, 1.0, 1.0});
    CHECK(ok.flag == KernelFlag::ok);
    CHECK(ok.value == 0.5);
}

TEST_CASE("kernel values on one shell stay within the comparability interval") {
    const double alpha = 0.25, beta = 0.25, theta = 1.0;
    const auto [lo, hi] = shell_comparability_bounds(alpha, beta, theta);
    CHECK(lo > 0.0);
    CHECK(hi >= 1.0);
    Rng rng(123);
    for (int trial = 0; trial < 2000; ++trial) {
        const int j = static_cast<int>(rng.uniform_int(-6, 6));
        const int ell = static_cast<int>(rng.uniform_int(-5, 5));
        const int k = static_cast<int>(rng.uniform_int(-5, 5));
        // Sample a gap inside shell (ell, j, k).
        const double d1 = std::exp2(j + rng.uniform01());
        const double d2 = std::exp2(j - ell + rng.uniform01());
        const double d3 = std::exp2(j + (j - ell) - k + rng.uniform01());
        const Vec3 x{rng.sign() * d1, rng.sign() * d2, rng.sign() * d3};
        REQUIRE(in_shell(x, {0, 0, 0}, ShellIndex{ell, j, k}));
        const double v = eval_kernel(KernelSpec::zygmund(
                                          OperatorParams{alpha, beta, theta, 2.4, 6.0}),
                                      x);
        const double ref = shell_reference_value(alpha, beta, theta, ell, j, k);
        const double ratio = v / ref;
        CHECK(ratio >= lo * (1.0 - 1e-12));
        CHECK(ratio <= hi * (1.0 + 1e-12));
    }
}
