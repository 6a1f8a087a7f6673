#include "zygfrac/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace zygfrac {

namespace {

// Shell index packed into one integer so that ascending key order equals
// lexicographic (ell, j, k) order.  Binary exponents of finite doubles lie
// in [-1074, 1024], so each component fits comfortably in 13 bits with a
// 4096 offset.
std::uint64_t pack_index(const ShellIndex& s) {
    return (static_cast<std::uint64_t>(s.ell + 4096) << 26) |
           (static_cast<std::uint64_t>(s.j + 4096) << 13) |
           static_cast<std::uint64_t>(s.k + 4096);
}

ShellIndex unpack_index(std::uint64_t key) {
    return ShellIndex{static_cast<int>((key >> 26) & 0x1fff) - 4096,
                      static_cast<int>((key >> 13) & 0x1fff) - 4096,
                      static_cast<int>(key & 0x1fff) - 4096};
}

struct TermLess {
    bool operator()(const std::pair<ShellIndex, double>& a, const ShellIndex& b) const {
        return a.first < b;
    }
    bool operator()(const ShellIndex& a, const std::pair<ShellIndex, double>& b) const {
        return a < b.first;
    }
};

}  // namespace

ShellDecomposition::ShellDecomposition(std::vector<std::pair<ShellIndex, double>> terms)
    : terms_(std::move(terms)) {
    if (!std::is_sorted(terms_.begin(), terms_.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; }))
        throw std::logic_error("ShellDecomposition: terms must be sorted by shell index");
}

double ShellDecomposition::shell(const ShellIndex& idx) const {
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), idx, TermLess{});
    if (it != terms_.end() && it->first == idx) return it->second;
    return 0.0;
}

namespace {

using TermIt = std::vector<std::pair<ShellIndex, double>>::const_iterator;

// Sum of bucket values over [lo, hi) with equal (ell, j), ascending k.
double slab_from_range(TermIt lo, TermIt hi) {
    double s = 0.0;
    for (auto it = lo; it != hi; ++it) s += it->second;
    return s;
}

// Sum of slab values over [lo, hi) with equal ell, ascending j.
double cone_from_range(TermIt lo, TermIt hi) {
    double s = 0.0;
    auto it = lo;
    while (it != hi) {
        auto jt = it;
        while (jt != hi && jt->first.j == it->first.j) ++jt;
        s += slab_from_range(it, jt);
        it = jt;
    }
    return s;
}

}  // namespace

double ShellDecomposition::slab(int ell, int j) const {
    const ShellIndex lo{ell, j, INT32_MIN / 2};
    const ShellIndex hi{ell, j, INT32_MAX / 2};
    const auto a = std::lower_bound(terms_.begin(), terms_.end(), lo, TermLess{});
    const auto b = std::lower_bound(terms_.begin(), terms_.end(), hi, TermLess{});
    return slab_from_range(a, b);
}

double ShellDecomposition::cone(int ell) const {
    const ShellIndex lo{ell, INT32_MIN / 2, 0};
    const ShellIndex hi{ell, INT32_MAX / 2, 0};
    const auto a = std::lower_bound(terms_.begin(), terms_.end(), lo, TermLess{});
    const auto b = std::lower_bound(terms_.begin(), terms_.end(), hi, TermLess{});
    return cone_from_range(a, b);
}

double ShellDecomposition::total() const {
    double s = 0.0;
    auto it = terms_.begin();
    while (it != terms_.end()) {
        auto jt = it;
        while (jt != terms_.end() && jt->first.ell == it->first.ell) ++jt;
        s += cone_from_range(it, jt);
        it = jt;
    }
    return s;
}

std::vector<int> ShellDecomposition::cone_indices() const {
    std::vector<int> out;
    for (const auto& t : terms_)
        if (out.empty() || out.back() != t.first.ell) out.push_back(t.first.ell);
    return out;
}

ShellDecomposition decompose(const OperatorInstance& op, const FunctionField& f, const Vec3& x) {
    if (!op.grid.covers(f.support()))
        throw std::runtime_error("decompose: grid does not cover the field support");
    std::unordered_map<std::uint64_t, NeumaierSum> buckets;
    const double vol = op.grid.cell_volume();
    for (int i = 0; i < op.grid.counts[0]; ++i)
        for (int j = 0; j < op.grid.counts[1]; ++j)
            for (int k = 0; k < op.grid.counts[2]; ++k) {
                const Vec3 y = op.grid.source_point(i, j, k);
                const double fv = f(y);
                if (fv == 0.0) continue;
                const auto idx = classify(x, y);
                if (!idx)
                    throw std::domain_error(
                        "decompose: target collides with a source center (zero coordinate gap)");
                const Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
                buckets[pack_index(*idx)].add(fv * eval_kernel(op.spec, d) * vol);
            }
    std::vector<std::pair<std::uint64_t, double>> packed;
    packed.reserve(buckets.size());
    for (const auto& [key, acc] : buckets) packed.emplace_back(key, acc.value());
    std::sort(packed.begin(), packed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<ShellIndex, double>> terms;
    terms.reserve(packed.size());
    for (const auto& [key, v] : packed) terms.emplace_back(unpack_index(key), v);
    return ShellDecomposition(std::move(terms));
}

double apply(const OperatorInstance& op, const FunctionField& f, const Vec3& x) {
    return decompose(op, f, x).total();
}

double apply_delta(const OperatorInstance& op, const FunctionField& f, int ell, const Vec3& x) {
    return decompose(op, f, x).cone(ell);
}

double apply_delta_j(const OperatorInstance& op, const FunctionField& f, int ell, int j,
                     const Vec3& x) {
    return decompose(op, f, x).slab(ell, j);
}

double apply_delta_jk(const OperatorInstance& op, const FunctionField& f, const ShellIndex& idx,
                      const Vec3& x) {
    return decompose(op, f, x).shell(idx);
}

std::vector<double> apply_batch(const OperatorInstance& op, const FunctionField& f,
                                const std::vector<Vec3>& xs) {
    std::vector<double> out(xs.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(xs.size()); ++i)
        out[i] = apply(op, f, xs[i]);
    return out;
}

std::vector<ShellDecomposition> decompose_batch(const OperatorInstance& op,
                                                const FunctionField& f,
                                                const std::vector<Vec3>& xs) {
    std::vector<ShellDecomposition> out(xs.size(),
                                        ShellDecomposition({}));
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(xs.size()); ++i)
        out[i] = decompose(op, f, xs[i]);
    return out;
}

double baseline_1d(double alpha, const Field1D& f, const Grid1D& grid, double x) {
    const double lo = grid.origin;
    const double hi = grid.origin + grid.spacing * grid.count;
    const double slack = 1e-12 * std::max(1.0, std::abs(f.support.length()));
    if (f.support.lo < lo - slack || f.support.hi > hi + slack)
        throw std::runtime_error("baseline_1d: grid does not cover the field support");
    NeumaierSum acc;
    for (int i = 0; i < grid.count; ++i) {
        const double y = grid.source_coord(i);
        const double fv = f.sampler(y);
        if (fv == 0.0) continue;
        acc.add(fv * eval_kernel_1d(alpha, x - y) * grid.spacing);
    }
    return acc.value();
}

double baseline_3param(const ThreeParamExponents& e, const FunctionField& f,
                       const QuadratureGrid& grid, const Vec3& x) {
    validate(e);
    if (!grid.covers(f.support()))
        throw std::runtime_error("baseline_3param: grid does not cover the field support");
    NeumaierSum acc;
    const double vol = grid.cell_volume();
    for (int i = 0; i < grid.counts[0]; ++i)
        for (int j = 0; j < grid.counts[1]; ++j)
            for (int k = 0; k < grid.counts[2]; ++k) {
                const Vec3 y = grid.source_point(i, j, k);
                const double fv = f(y);
                if (fv == 0.0) continue;
                const double kv = eval_kernel_1d(e.a1, x[0] - y[0]) *
                                  eval_kernel_1d(e.a2, x[1] - y[1]) *
                                  eval_kernel_1d(e.a3, x[2] - y[2]);
                acc.add(fv * kv * vol);
            }
    return acc.value();
}

}  // namespace zygfrac
