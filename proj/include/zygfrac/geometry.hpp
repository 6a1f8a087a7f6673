#pragma once
// Axis-aligned geometry and quadrature lattices.
//
// Convention used throughout: quadrature *sources* sit at cell centers
// (origin + (i+1/2)h) while experiment *targets* and snapped Monte Carlo
// points sit on corner-derived lattices whose offsets are integer multiples
// of the source spacing.  Per-axis source/target distances are then odd
// multiples of h/2 and never vanish, so singular kernels are never evaluated
// on the diagonal and no sample is ever dropped by the shell classifier.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zygfrac {

using Vec3 = std::array<double, 3>;

struct Box3 {
    Vec3 lo{0.0, 0.0, 0.0};
    Vec3 hi{0.0, 0.0, 0.0};

    double side(int axis) const { return hi[axis] - lo[axis]; }
    double volume() const { return side(0) * side(1) * side(2); }
    Vec3 center() const {
        return {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])};
    }
    bool contains(const Vec3& x) const {
        for (int a = 0; a < 3; ++a)
            if (x[a] < lo[a] || x[a] > hi[a]) return false;
        return true;
    }
    bool contains_box(const Box3& inner, double slack = 0.0) const {
        for (int a = 0; a < 3; ++a)
            if (inner.lo[a] < lo[a] - slack || inner.hi[a] > hi[a] + slack) return false;
        return true;
    }
    // Box inflated by `factor` about its center (factor >= 1 enlarges).
    Box3 inflated(double factor) const {
        Box3 out;
        const Vec3 c = center();
        for (int a = 0; a < 3; ++a) {
            const double half = 0.5 * factor * side(a);
            out.lo[a] = c[a] - half;
            out.hi[a] = c[a] + half;
        }
        return out;
    }
};

// Regular lattice of counts[a] cells per axis starting at `origin` with cell
// size `spacing`.  `centered` selects the half-spacing shift for source
// points; corner points are always origin + i*h.
struct QuadratureGrid {
    Vec3 origin{0.0, 0.0, 0.0};
    Vec3 spacing{1.0, 1.0, 1.0};
    std::array<int, 3> counts{1, 1, 1};
    bool centered = true;

    double cell_volume() const { return spacing[0] * spacing[1] * spacing[2]; }
    long long cell_total() const {
        return 1LL * counts[0] * counts[1] * counts[2];
    }
    double source_coord(int axis, int i) const {
        const double off = centered ? 0.5 : 0.0;
        return origin[axis] + (static_cast<double>(i) + off) * spacing[axis];
    }
    Vec3 source_point(int i, int j, int k) const {
        return {source_coord(0, i), source_coord(1, j), source_coord(2, k)};
    }
    double corner_coord(int axis, int i) const {
        return origin[axis] + static_cast<double>(i) * spacing[axis];
    }
    Box3 bounds() const {
        Box3 b;
        for (int a = 0; a < 3; ++a) {
            b.lo[a] = origin[a];
            b.hi[a] = corner_coord(a, counts[a]);
        }
        return b;
    }
    bool covers(const Box3& box, double rel_slack = 1e-12) const {
        const Box3 b = bounds();
        for (int a = 0; a < 3; ++a) {
            const double slack = rel_slack * std::max(1.0, std::abs(box.side(a)));
            if (box.lo[a] < b.lo[a] - slack || box.hi[a] > b.hi[a] + slack) return false;
        }
        return true;
    }
    // Nearest point of the (extended) corner lattice; used to snap Monte
    // Carlo points so they keep half-spacing clearance from all sources.
    Vec3 snap_to_corner_lattice(const Vec3& x) const {
        Vec3 out;
        for (int a = 0; a < 3; ++a) {
            const double i = std::round((x[a] - origin[a]) / spacing[a]);
            out[a] = origin[a] + i * spacing[a];
        }
        return out;
    }
};

// Grid whose cells exactly tile `box` with counts[a] cells per axis.
inline QuadratureGrid grid_over(const Box3& box, std::array<int, 3> counts) {
    for (int a = 0; a < 3; ++a) {
        if (counts[a] <= 0) throw std::invalid_argument("grid_over: counts must be positive");
        if (!(box.side(a) > 0.0)) throw std::invalid_argument("grid_over: box must have positive sides");
    }
    QuadratureGrid g;
    g.origin = box.lo;
    for (int a = 0; a < 3; ++a) g.spacing[a] = box.side(a) / counts[a];
    g.counts = counts;
    return g;
}

// Lattice image under the inverse of the per-axis scaling x -> (c1 x1, c2 x2, c3 x3):
// if `g` covers supp f then the mapped grid covers supp of x -> f(c1 x1, c2 x2, c3 x3).
// With power-of-two factors the mapped coordinates are exact in floating point.
inline QuadratureGrid map_grid(const QuadratureGrid& g, double c1, double c2, double c3) {
    if (!(c1 > 0.0) || !(c2 > 0.0) || !(c3 > 0.0))
        throw std::invalid_argument("map_grid: scale factors must be positive");
    QuadratureGrid out = g;
    const std::array<double, 3> c{c1, c2, c3};
    for (int a = 0; a < 3; ++a) {
        out.origin[a] = g.origin[a] / c[a];
        out.spacing[a] = g.spacing[a] / c[a];
    }
    return out;
}

// 1D analogues for the classical fractional-integral baseline.
struct Interval {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

struct Grid1D {
    double origin = 0.0;
    double spacing = 1.0;
    int count = 1;
    double source_coord(int i) const { return origin + (i + 0.5) * spacing; }
};

inline Grid1D grid_over_1d(const Interval& iv, int count) {
    if (count <= 0) throw std::invalid_argument("grid_over_1d: count must be positive");
    if (!(iv.length() > 0.0)) throw std::invalid_argument("grid_over_1d: empty interval");
    return Grid1D{iv.lo, iv.length() / count, count};
}

// Neumaier-compensated accumulator: running sum plus a correction term that
// also captures the case |x| > |s|.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

}  // namespace zygfrac
