#pragma once
// 3D summed-area table over grid cells: after one O(n^3) build, the sum of
// f(center)^power over any axis box of cells costs 8 corner lookups with an
// alternating-sign (inclusion-exclusion) combination.  Query ranges may
// extend beyond the grid; they are clipped, which models zero mass outside.

#include <vector>

#include "zygfrac/fields.hpp"
#include "zygfrac/geometry.hpp"

namespace zygfrac {

class PrefixSumTable {
  public:
    PrefixSumTable(const FunctionField& f, const QuadratureGrid& grid, double power = 1.0);

    // Sum of cell values over cell indices [i0,i1) x [j0,j1) x [k0,k1),
    // clipped to the grid; clamped at zero (inclusion-exclusion of a
    // nonnegative series can round to a tiny negative).
    double box_sum(long long i0, long long i1, long long j0, long long j1, long long k0,
                   long long k1) const;

    double total() const;
    const QuadratureGrid& grid() const { return grid_; }
    double power() const { return power_; }

    // Raw cumulative value at corner (i,j,k), 0 <= i <= n1 etc.; unchecked.
    // Exposed so box scans can difference along one axis without repeating
    // the full 8-corner combination.
    double prefix_at(int i, int j, int k) const { return at(i, j, k); }

  private:
    double at(int i, int j, int k) const {
        return table_[(static_cast<std::size_t>(i) * (grid_.counts[1] + 1) + j) *
                          (grid_.counts[2] + 1) +
                      k];
    }

    QuadratureGrid grid_;
    double power_;
    std::vector<double> table_;  // (n1+1)(n2+1)(n3+1) cumulative sums
};

}  // namespace zygfrac
