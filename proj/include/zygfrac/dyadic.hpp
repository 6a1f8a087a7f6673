#pragma once
// Dyadic shell geometry adapted to the two-parameter dilation group.
//
// For x != y (coordinatewise) the shell index (ell, j, k) records the binary
// magnitudes of the coordinate gaps:
//
//   2^j         <= |x1-y1| < 2^{j+1}
//   2^{j-ell}   <= |x2-y2| < 2^{j-ell+1}
//   2^{m3}      <= |x3-y3| < 2^{m3+1},   m3 = j + (j-ell) - k.
//
// j is the coarse scale, ell the eccentricity between the first two axes,
// and k measures how far |x3-y3| deviates from the product scale
// |x1-y1||x2-y2| (k = 0 is the "Zygmund surface").  Classification uses
// exact binary exponent extraction (ilogb), so shell membership is
// deterministic even exactly on the dyadic boundaries: intervals are closed
// below and open above.
//
// Starred shells widen the first two axis ranges by a factor 2^3 on both
// sides (lower bounds 2^{j-3}, 2^{j-3-ell}; upper bounds 2^{j+3}, 2^{j+3-ell})
// while the third axis range is unchanged.  They appear in the overlap
// bookkeeping of the reverse-doubling argument.
//
// lemma51_cube constructs, for a shell pair in the "third regime"
// j - ell < j_nu - 2 < j - 2 (j_nu the smallest competing coarse scale), a
// product set Q = Q1 x Q2 of exact area 2^{2 j_nu - 5} that is contained in
// the starred-shell projections of every competing center, certifying the
// overlap count bound with r = j - j_nu + 2.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zygfrac/geometry.hpp"

namespace zygfrac {

struct ShellIndex {
    int ell = 0;
    int j = 0;
    int k = 0;
    auto operator<=>(const ShellIndex&) const = default;
};

// Shell of the gap x - y; std::nullopt when any coordinate gap vanishes.
std::optional<ShellIndex> classify(const Vec3& x, const Vec3& y);

// Exact membership predicates (classify-consistent by construction).
bool in_shell(const Vec3& x, const Vec3& y, const ShellIndex& idx);
bool in_cone(const Vec3& x, const Vec3& y, int ell);

// Starred shell membership: axes 1,2 widened to [2^{m-3}, 2^{m+3}), axis 3 kept.
bool starred_shell_contains(const Vec3& x, const Vec3& y, const ShellIndex& idx);

// Two-sided dyadic annulus on the line: { t : r_lo <= |t - center| < r_hi }.
struct DyadicAnnulus {
    double center = 0.0;
    double r_lo = 0.0;
    double r_hi = 0.0;
    bool contains(double t) const {
        const double d = std::abs(t - center);
        return d >= r_lo && d < r_hi;
    }
    double measure() const { return 2.0 * (r_hi - r_lo); }
};

// Projection of the (possibly starred) shell with indices (ell, j) onto the
// first two coordinates, anchored at (y1, y2): a product of two annuli.
struct RectProjection {
    DyadicAnnulus axis1;
    DyadicAnnulus axis2;
    bool starred = false;
    bool contains(double t1, double t2) const {
        return axis1.contains(t1) && axis2.contains(t2);
    }
};

RectProjection projection(double y1, double y2, int ell, int j, bool starred);

struct Lemma51Witness {
    std::array<double, 2> point{0.0, 0.0};  // y-center of a competing annulus pair
    int j = 0;                              // its coarse scale
};

struct Lemma51Result {
    Interval q1;             // axis-1 interval, length exactly 2^{j_nu - 3}
    DyadicAnnulus q2;        // axis-2 annulus, measure exactly 2^{j_nu - 2}
    double area = 0.0;       // q1.length * q2.measure = 2^{2 j_nu - 5}, exact
    std::array<double, 2> witness{0.0, 0.0};
    int j_nu = 0;
    int r = 0;               // j - j_nu + 2
    bool contains(double t1, double t2) const {
        return q1.contains(t1) && q2.contains(t2);
    }
};

// Constructs the common product set for center (y1, y2) at shell scales
// (ell, j) against the competing centers/scales in `others` (which must
// include the minimal scale j_nu satisfying j - ell < j_nu - 2 < j - 2;
// violations throw std::invalid_argument).  Returns std::nullopt when the
// lattice witness search finds no point in the intersection of the candidate
// region with all competing annuli.
std::optional<Lemma51Result> lemma51_cube(double y1, double y2, int ell, int j,
                                          std::span<const Lemma51Witness> others);

// Randomized audit: generates third-regime configurations witness-first
// (margin 1/8 of every annulus width, so the lattice search provably
// succeeds), builds the cube, checks the exact area and the starred-shell
// inclusion at sampled interior points.
struct Lemma51AuditResult {
    long long trials = 0;
    long long witness_failures = 0;
    long long area_mismatches = 0;
    long long inclusion_failures = 0;
    int max_r = 0;
};

Lemma51AuditResult lemma51_random_audit(std::uint64_t seed, int trials, int samples_per_trial);

}  // namespace zygfrac
