#include "zygfrac/prefix_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zygfrac {

PrefixSumTable::PrefixSumTable(const FunctionField& f, const QuadratureGrid& grid, double power)
    : grid_(grid), power_(power) {
    const int n1 = grid.counts[0], n2 = grid.counts[1], n3 = grid.counts[2];
    table_.assign(static_cast<std::size_t>(n1 + 1) * (n2 + 1) * (n3 + 1), 0.0);
    auto idx = [&](int i, int j, int k) {
        return (static_cast<std::size_t>(i) * (n2 + 1) + j) * (n3 + 1) + k;
    };
    for (int i = 1; i <= n1; ++i)
        for (int j = 1; j <= n2; ++j)
            for (int k = 1; k <= n3; ++k) {
                double v = f(grid.source_point(i - 1, j - 1, k - 1));
                if (v < 0.0)
                    throw std::invalid_argument("PrefixSumTable: field must be nonnegative");
                if (v != 0.0 && power != 1.0) v = std::pow(v, power);
                table_[idx(i, j, k)] = v + table_[idx(i - 1, j, k)] + table_[idx(i, j - 1, k)] +
                                       table_[idx(i, j, k - 1)] - table_[idx(i - 1, j - 1, k)] -
                                       table_[idx(i - 1, j, k - 1)] - table_[idx(i, j - 1, k - 1)] +
                                       table_[idx(i - 1, j - 1, k - 1)];
            }
}

double PrefixSumTable::box_sum(long long i0, long long i1, long long j0, long long j1,
                               long long k0, long long k1) const {
    const auto clip = [](long long v, int n) {
        return static_cast<int>(std::clamp(v, 0LL, static_cast<long long>(n)));
    };
    const int a0 = clip(i0, grid_.counts[0]), a1 = clip(i1, grid_.counts[0]);
    const int b0 = clip(j0, grid_.counts[1]), b1 = clip(j1, grid_.counts[1]);
    const int c0 = clip(k0, grid_.counts[2]), c1 = clip(k1, grid_.counts[2]);
    if (a0 >= a1 || b0 >= b1 || c0 >= c1) return 0.0;
    const double s = at(a1, b1, c1) - at(a0, b1, c1) - at(a1, b0, c1) - at(a1, b1, c0) +
                     at(a0, b0, c1) + at(a0, b1, c0) + at(a1, b0, c0) - at(a0, b0, c0);
    return std::max(0.0, s);
}

double PrefixSumTable::total() const {
    return at(grid_.counts[0], grid_.counts[1], grid_.counts[2]);
}

}  // namespace zygfrac
