// Parameter admissibility and the exponent bookkeeping, including the frozen
// value of the auxiliary bracket exponent at the canonical parameter point.

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zygfrac/params.hpp"

using namespace zygfrac;

TEST_CASE("validate accepts admissible tuples and names the broken inequality") {
    CHECK_NOTHROW(validate(OperatorParams{0.25, 0.25, 1.0, 2.4, 6.0}));
    CHECK_NOTHROW(validate(OperatorParams{-0.25, 0.5, 1.0, 2.0, 4.0}));
    CHECK_NOTHROW(validate(OperatorParams{0.9, 0.9, 2.0, 1.5, 3.0}));  // theta > 1 frees beta

    CHECK_THROWS_AS(validate(OperatorParams{1.0, 0.25, 1.0, 2.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(OperatorParams{0.25, -0.5, 1.0, 2.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(OperatorParams{0.25, 0.25, 0.0, 2.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(OperatorParams{0.5, 0.9, 0.8, 2.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(OperatorParams{0.25, 0.25, 1.0, 1.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(OperatorParams{0.25, 0.25, 1.0, 4.0, 2.0}), std::invalid_argument);
}

TEST_CASE("homogeneous_p solves the scale-consistency relation exactly") {
    const double p = homogeneous_p(0.25, 0.25, 6.0);
    CHECK(p == doctest::Approx(12.0 / 5.0).epsilon(1e-15));
    const OperatorParams prm{0.25, 0.25, 1.0, p, 6.0};
    CHECK(is_homogeneous(prm));
    CHECK_FALSE(is_homogeneous(OperatorParams{0.25, 0.25, 1.0, 2.0, 6.0}));
    CHECK_THROWS_AS(homogeneous_p(0.9, 0.9, 1.2), std::invalid_argument);
}

TEST_CASE("sigma exponent is the smaller of alpha+beta and 2/q") {
    CHECK(sigma_exponent(OperatorParams{0.25, 0.25, 1.0, 2.4, 6.0}) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(sigma_exponent(OperatorParams{0.45, 0.45, 1.0, 1.5, 4.0}) == doctest::Approx(0.5));
}

TEST_CASE("auxiliary bracket exponent at the canonical point is 5/24") {
    const OperatorParams prm{0.25, 0.25, 1.0, homogeneous_p(0.25, 0.25, 6.0), 6.0};
    const double vt = compute_vartheta(prm);
    // Frozen midpoint of the feasible interval (1/6, 1/4).
    CHECK(vt == doctest::Approx(5.0 / 24.0).epsilon(1e-14));
    CHECK(vt < prm.alpha);
    CHECK(prm.beta - 1.0 / prm.p + vt > 0.0);
}

TEST_CASE("auxiliary bracket exponent lies strictly inside the feasible set") {
    // Independent check: scan a fine grid of candidate exponents; the
    // returned value must be feasible and every feasible candidate must be
    // no closer than half a grid step to either endpoint of the scan's
    // feasible range (i.e. the return is an interior midpoint).
    const OperatorParams prm{0.3, 0.15, 1.0, homogeneous_p(0.3, 0.15, 6.0), 6.0};
    const double vt = compute_vartheta(prm);
    const auto feasible = [&](double t) {
        return t > 0.0 && t < prm.alpha && prm.beta - 1.0 / prm.p + t > 0.0;
    };
    CHECK(feasible(vt));
    double lo = 1.0, hi = 0.0;
    for (int i = 1; i < 100000; ++i) {
        const double t = i * 1e-5;
        if (feasible(t)) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    CHECK(vt == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-3));
}

TEST_CASE("auxiliary bracket exponent with inactive lower constraint") {
    // beta >= 1/p makes the lower endpoint 0, so the midpoint is alpha/2.
    const OperatorParams prm{0.2, 0.6, 1.0, homogeneous_p(0.2, 0.6, 6.0), 6.0};
    CHECK(compute_vartheta(prm) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("auxiliary bracket exponent degenerates to 1 when alpha <= 0") {
    const OperatorParams prm{-0.1, 0.5, 1.0, homogeneous_p(-0.1, 0.5, 6.0), 6.0};
    CHECK(compute_vartheta(prm) == 1.0);
}

TEST_CASE("auxiliary bracket exponent requires scale consistency") {
    CHECK_THROWS_AS(compute_vartheta(OperatorParams{0.25, 0.25, 1.0, 2.0, 6.0}),
                    std::invalid_argument);
}

TEST_CASE("three-exponent validation") {
    CHECK_NOTHROW(validate(ThreeParamExponents{0.5, 0.5, 0.5}));
    CHECK_THROWS_AS(validate(ThreeParamExponents{0.0, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ThreeParamExponents{0.5, 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ThreeParamExponents{0.5, 0.5, -0.1}), std::invalid_argument);
}
