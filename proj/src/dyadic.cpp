#include "zygfrac/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "zygfrac/rng.hpp"

namespace zygfrac {

namespace {

// Exact floor(log2|d|) for finite nonzero doubles (radix-2 exponent).
int floor_log2_abs(double d) { return std::ilogb(d); }

bool finite_gap(double d) { return std::isfinite(d); }

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

std::optional<ShellIndex> classify(const Vec3& x, const Vec3& y) {
    const double d1 = x[0] - y[0];
    const double d2 = x[1] - y[1];
    const double d3 = x[2] - y[2];
    if (!finite_gap(d1) || !finite_gap(d2) || !finite_gap(d3))
        throw std::invalid_argument("classify: non-finite coordinate gap");
    if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0) return std::nullopt;
    const int e1 = floor_log2_abs(d1);
    const int e2 = floor_log2_abs(d2);
    const int e3 = floor_log2_abs(d3);
    // e1 = j, e2 = j - ell, e3 = j + (j - ell) - k.
    return ShellIndex{e1 - e2, e1, e1 + e2 - e3};
}

bool in_shell(const Vec3& x, const Vec3& y, const ShellIndex& idx) {
    const auto got = classify(x, y);
    return got.has_value() && *got == idx;
}

bool in_cone(const Vec3& x, const Vec3& y, int ell) {
    const auto got = classify(x, y);
    return got.has_value() && got->ell == ell;
}

bool starred_shell_contains(const Vec3& x, const Vec3& y, const ShellIndex& idx) {
    const double d1 = x[0] - y[0];
    const double d2 = x[1] - y[1];
    const double d3 = x[2] - y[2];
    if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0) return false;
    const int e1 = floor_log2_abs(d1);
    const int e2 = floor_log2_abs(d2);
    const int e3 = floor_log2_abs(d3);
    // Axes 1,2 widen by 2^3 both ways; axis 3 keeps the plain shell range.
    if (e1 < idx.j - 3 || e1 > idx.j + 2) return false;
    const int m2 = idx.j - idx.ell;
    if (e2 < m2 - 3 || e2 > m2 + 2) return false;
    return e3 == idx.j + m2 - idx.k;
}

RectProjection projection(double y1, double y2, int ell, int j, bool starred) {
    const int w = starred ? 3 : 0;
    RectProjection rp;
    rp.axis1 = DyadicAnnulus{y1, pow2(j - w), pow2(j + 1 + (starred ? 2 : 0))};
    rp.axis2 = DyadicAnnulus{y2, pow2(j - ell - w), pow2(j - ell + 1 + (starred ? 2 : 0))};
    rp.starred = starred;
    return rp;
}

namespace {

// Scans one coordinate of the candidate region: distances from `anchor` in
// [2^e, 2^{e+1}), both signs, sampled at max(1, floor(width/step)) midpoints
// per side, accepting the first point lying in all competing annuli.
std::optional<double> scan_axis(double anchor, int e, double step,
                                std::span<const Lemma51Witness> others, int axis) {
    const double width = pow2(e);
    const int n = std::max(1, static_cast<int>(std::floor(width / step)));
    const double sub = width / n;
    for (int side = 0; side < 2; ++side) {
        const double sgn = (side == 0) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) {
            const double dist = width + (i + 0.5) * sub;  // in [2^e, 2^{e+1})
            const double t = anchor + sgn * dist;
            bool ok = true;
            for (const auto& o : others) {
                const double d = std::abs(t - o.point[axis]);
                if (d < pow2(o.j) || d >= pow2(o.j + 1)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return t;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Lemma51Result> lemma51_cube(double y1, double y2, int ell, int j,
                                          std::span<const Lemma51Witness> others) {
    if (others.empty()) throw std::invalid_argument("lemma51_cube: no competing centers");
    int j_nu = others[0].j;
    std::size_t nu = 0;
    for (std::size_t m = 1; m < others.size(); ++m) {
        if (others[m].j < j_nu) {
            j_nu = others[m].j;
            nu = m;
        }
    }
    // Third-regime hypothesis: j - ell < j_nu - 2 < j - 2.
    if (!(j - ell < j_nu - 2) || !(j_nu < j))
        throw std::invalid_argument("lemma51_cube: scales violate the third-regime hypothesis");

    const double step = pow2(j_nu - 4);
    const auto t1 = scan_axis(y1, j, step, others, 0);
    if (!t1) return std::nullopt;
    const auto t2 = scan_axis(y2, j - ell, step, others, 1);
    if (!t2) return std::nullopt;

    // Axis-1 interval of length exactly 2^{j_nu-3} around the witness, kept
    // inside the component of the minimal-scale annulus containing it.
    const double y1nu = others[nu].point[0];
    const double len = pow2(j_nu - 3);
    const double sgn = (*t1 >= y1nu) ? 1.0 : -1.0;
    const double c_lo = (sgn > 0) ? y1nu + pow2(j_nu) : y1nu - pow2(j_nu + 1);
    const double c_hi = (sgn > 0) ? y1nu + pow2(j_nu + 1) : y1nu - pow2(j_nu);
    double a = *t1 - 0.5 * len;
    a = std::min(std::max(a, c_lo), c_hi - len);

    Lemma51Result res;
    res.q1 = Interval{a, a + len};
    res.q2 = DyadicAnnulus{y2, pow2(j_nu - 3), pow2(j_nu - 2)};
    // Both factors are exact powers of two (the annulus measure is
    // 2*(2^{j_nu-2} - 2^{j_nu-3}) = 2^{j_nu-2}), so the product is the exact
    // dyadic area 2^{2 j_nu - 5}; q1.length() may carry endpoint rounding.
    res.area = len * res.q2.measure();
    res.witness = {*t1, *t2};
    res.j_nu = j_nu;
    res.r = j - j_nu + 2;
    return res;
}

Lemma51AuditResult lemma51_random_audit(std::uint64_t seed, int trials, int samples_per_trial) {
    if (trials <= 0 || samples_per_trial <= 0)
        throw std::invalid_argument("lemma51_random_audit: counts must be positive");
    Rng rng(seed);
    Lemma51AuditResult out;
    for (int trial = 0; trial < trials; ++trial) {
        // Scales: j - j_nu = gap in [1,6]; ell > gap + 2 puts the pair in the
        // third regime j - ell < j_nu - 2 < j - 2.
        const int j = static_cast<int>(rng.uniform_int(-2, 5));
        const int gap = static_cast<int>(rng.uniform_int(1, 6));
        const int j_nu = j - gap;
        const int ell = gap + 3 + static_cast<int>(rng.uniform_int(0, 4));
        const int n_others = static_cast<int>(rng.uniform_int(1, 4));

        // Witness-first placement: every center sits at distance
        // 2^scale * uniform(1.125, 1.875) from the intended witness, keeping
        // a 1/8-width margin inside its annulus on both sides.
        const double hx1 = rng.uniform(-1.0, 1.0) * pow2(j + 2);
        const double hx2 = rng.uniform(-1.0, 1.0) * pow2(j + 2);
        const double y1 = hx1 - rng.sign() * pow2(j) * rng.uniform(1.125, 1.875);
        const double y2 = hx2 - rng.sign() * 1.5 * pow2(j - ell);

        std::vector<Lemma51Witness> others(n_others);
        for (int m = 0; m < n_others; ++m) {
            const int jm = (m == 0) ? j_nu : j_nu + static_cast<int>(rng.uniform_int(0, 3));
            others[m].j = jm;
            others[m].point = {hx1 - rng.sign() * pow2(jm) * rng.uniform(1.125, 1.875),
                               hx2 - rng.sign() * pow2(jm) * rng.uniform(1.125, 1.875)};
        }

        ++out.trials;
        const auto cube = lemma51_cube(y1, y2, ell, j, others);
        if (!cube) {
            ++out.witness_failures;
            continue;
        }
        out.max_r = std::max(out.max_r, cube->r);
        if (cube->area != pow2(2 * j_nu - 5)) ++out.area_mismatches;

        const RectProjection own = projection(y1, y2, cube->r, j, true);
        bool included = true;
        for (int s = 0; s < samples_per_trial && included; ++s) {
            const double t1 = cube->q1.lo + rng.uniform01() * pow2(j_nu - 3);
            const double rad = cube->q2.r_lo + rng.uniform01() * (cube->q2.r_hi - cube->q2.r_lo);
            const double t2 = cube->q2.center + rng.sign() * rad;
            if (!own.contains(t1, t2)) included = false;
            for (const auto& o : others) {
                if (!included) break;
                if (!projection(o.point[0], o.point[1], 0, o.j, true).contains(t1, t2))
                    included = false;
            }
        }
        if (!included) ++out.inclusion_failures;
    }
    return out;
}

}  // namespace zygfrac
