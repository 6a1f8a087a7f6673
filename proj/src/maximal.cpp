#include "zygfrac/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zygfrac {

namespace {

// One admissible box range along a single axis: clipped cell range [u, v)
// plus the unclipped cell count m (the volume uses m, the mass uses [u,v)).
struct AxisBox {
    int u = 0;
    int v = 0;
    double m = 1.0;
};

struct AxisFamily {
    std::vector<std::vector<AxisBox>> per_size;  // index t -> boxes of size 2^t
};

// Smallest T with 2^T large enough that one size-2^T box can cover the grid
// extent together with x; beyond that, enlarging only dilutes the average.
int cover_cap(double c, int n) {
    const double lo = std::min(0.0, std::floor(c));
    const double hi = std::max(static_cast<double>(n), c);
    const double span = std::max(1.0, hi - lo);
    int T = 0;
    while (std::ldexp(1.0, T) < span) ++T;
    return T;
}

AxisFamily build_axis(const QuadratureGrid& g, int axis, double x, int t_max) {
    const int n = g.counts[axis];
    const double c = (x - g.origin[axis]) / g.spacing[axis];
    const long long cl = static_cast<long long>(std::floor(c));
    const long long cu = static_cast<long long>(std::ceil(c));
    AxisFamily fam;
    fam.per_size.resize(t_max + 1);
    for (int t = 0; t <= t_max; ++t) {
        const long long m = 1LL << t;
        auto& list = fam.per_size[t];
        int last_u = -1, last_v = -1;
        for (long long a = cu - m; a <= cl; ++a) {
            const int u = static_cast<int>(std::clamp(a, 0LL, static_cast<long long>(n)));
            const int v = static_cast<int>(std::clamp(a + m, 0LL, static_cast<long long>(n)));
            if (u >= v) continue;                       // no overlap with the grid
            if (u == last_u && v == last_v) continue;   // same clipped range
            last_u = u;
            last_v = v;
            list.push_back(AxisBox{u, v, static_cast<double>(m)});
        }
    }
    return fam;
}

// Best average over the product family, with an optional coupling
// t3 = t1 + t2 + e (e_coupling set) selecting the Zygmund subfamily.
double scan_boxes(const PrefixSumTable& table, const Vec3& x, bool zygmund, int e) {
    const QuadratureGrid& g = table.grid();
    const int n3 = g.counts[2];
    int t1_max = cover_cap((x[0] - g.origin[0]) / g.spacing[0], g.counts[0]);
    int t2_max = cover_cap((x[1] - g.origin[1]) / g.spacing[1], g.counts[1]);
    int t3_max = cover_cap((x[2] - g.origin[2]) / g.spacing[2], n3);
    if (zygmund) {
        // Axis 1/2 sizes may need to exceed their own covering caps so that
        // t3 = t1 + t2 + e can reach the axis-3 covering cap.
        t1_max = std::max(t1_max, t3_max - e);
        t2_max = std::max(t2_max, t3_max - e);
        t3_max = std::max(t3_max, t1_max + t2_max + e);
    }
    const AxisFamily f1 = build_axis(g, 0, x[0], t1_max);
    const AxisFamily f2 = build_axis(g, 1, x[1], t2_max);
    const AxisFamily f3 = build_axis(g, 2, x[2], t3_max);

    std::vector<double> diff(n3 + 1);  // axis-3 profile of the (b1,b2) slab
    double best = 0.0;
    for (int t1 = 0; t1 < static_cast<int>(f1.per_size.size()); ++t1) {
        for (const AxisBox& b1 : f1.per_size[t1]) {
            for (int t2 = 0; t2 < static_cast<int>(f2.per_size.size()); ++t2) {
                for (const AxisBox& b2 : f2.per_size[t2]) {
                    int t3_lo = 0, t3_hi = static_cast<int>(f3.per_size.size()) - 1;
                    if (zygmund) {
                        const int t3 = t1 + t2 + e;
                        if (t3 < 0 || t3 > t3_hi) continue;
                        t3_lo = t3_hi = t3;
                    }
                    for (int k = 0; k <= n3; ++k)
                        diff[k] = table.prefix_at(b1.v, b2.v, k) - table.prefix_at(b1.u, b2.v, k) -
                                  table.prefix_at(b1.v, b2.u, k) + table.prefix_at(b1.u, b2.u, k);
                    const double inv12 = 1.0 / (b1.m * b2.m);
                    for (int t3 = t3_lo; t3 <= t3_hi; ++t3) {
                        for (const AxisBox& b3 : f3.per_size[t3]) {
                            const double mass = diff[b3.v] - diff[b3.u];
                            if (mass <= 0.0) continue;
                            const double avg = mass * inv12 / b3.m;
                            if (avg > best) best = avg;
                        }
                    }
                }
            }
        }
    }
    return best;
}

int zygmund_coupling_exponent(const QuadratureGrid& g) {
    const double r = g.spacing[0] * g.spacing[1] / g.spacing[2];
    const int e = std::ilogb(r);
    if (std::ldexp(1.0, e) != r)
        throw std::invalid_argument(
            "zygmund_maximal: h1*h2/h3 must be a power of two for whole-cell Zygmund boxes");
    return e;
}

}  // namespace

double strong_maximal(const PrefixSumTable& table, const Vec3& x) {
    return scan_boxes(table, x, false, 0);
}

double zygmund_maximal(const PrefixSumTable& table, const Vec3& x) {
    return scan_boxes(table, x, true, zygmund_coupling_exponent(table.grid()));
}

std::vector<double> strong_maximal_batch(const PrefixSumTable& table,
                                         const std::vector<Vec3>& xs) {
    std::vector<double> out(xs.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(xs.size()); ++i)
        out[i] = strong_maximal(table, xs[i]);
    return out;
}

std::vector<double> zygmund_maximal_batch(const PrefixSumTable& table,
                                          const std::vector<Vec3>& xs) {
    const int e = zygmund_coupling_exponent(table.grid());
    std::vector<double> out(xs.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(xs.size()); ++i)
        out[i] = scan_boxes(table, xs[i], true, e);
    return out;
}

}  // namespace zygfrac
