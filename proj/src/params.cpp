#include "zygfrac/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace zygfrac {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("invalid operator parameters: " + what);
}

}  // namespace

void validate(const OperatorParams& prm) {
    if (!(prm.alpha > -1.0 && prm.alpha < 1.0)) fail("alpha must lie in (-1, 1)");
    if (!(prm.beta > -1.0 && prm.beta < 1.0)) fail("beta must lie in (-1, 1)");
    if (!(prm.alpha + prm.beta > 0.0)) fail("alpha + beta must be positive");
    if (!(prm.theta > 0.0)) fail("theta must be positive");
    if (prm.theta <= 1.0 && !(prm.beta > -prm.theta && prm.beta < prm.theta))
        fail("beta must lie in (-theta, theta) when theta <= 1");
    if (!(prm.p > 1.0) || !std::isfinite(prm.p)) fail("p must lie in (1, infinity)");
    if (!(prm.q > 1.0) || !std::isfinite(prm.q)) fail("q must lie in (1, infinity)");
    if (!(prm.p < prm.q)) fail("p must be strictly smaller than q");
}

bool is_homogeneous(const OperatorParams& prm, double tol) {
    return std::abs(1.0 / prm.q - (1.0 / prm.p - 0.5 * (prm.alpha + prm.beta))) <= tol;
}

double homogeneous_p(double alpha, double beta, double q) {
    const double inv_p = 1.0 / q + 0.5 * (alpha + beta);
    if (!(inv_p > 0.0) || !(inv_p < 1.0))
        throw std::invalid_argument("homogeneous_p: resulting p falls outside (1, infinity)");
    return 1.0 / inv_p;
}

double sigma_exponent(const OperatorParams& prm) {
    validate(prm);
    return std::min(prm.alpha + prm.beta, 2.0 / prm.q);
}

double compute_vartheta(const OperatorParams& prm) {
    validate(prm);
    if (!is_homogeneous(prm))
        throw std::invalid_argument(
            "compute_vartheta: requires 1/q = 1/p - (alpha+beta)/2");
    if (prm.alpha <= 0.0) return 1.0;
    const double lo = std::max(0.0, 1.0 / prm.p - prm.beta);
    const double hi = prm.alpha;
    if (!(lo < hi))
        throw std::invalid_argument("compute_vartheta: feasible interval is empty");
    const double vt = 0.5 * (lo + hi);
    // Both strict constraints must hold with real margin; guards against a
    // degenerate interval collapsing under rounding.
    constexpr double kMargin = 1e-9;
    if (!(prm.alpha - vt >= kMargin) || !(prm.beta - 1.0 / prm.p + vt >= kMargin))
        throw std::invalid_argument("compute_vartheta: margin check failed");
    return vt;
}

void validate(const ThreeParamExponents& e) {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0)) {
            std::ostringstream os;
            os << "invalid three-parameter exponents: " << name << " must lie in (0, 1)";
            throw std::invalid_argument(os.str());
        }
    };
    check(e.a1, "alpha1");
    check(e.a2, "alpha2");
    check(e.a3, "alpha3");
}

}  // namespace zygfrac
