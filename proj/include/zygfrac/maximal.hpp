#pragma once
// Discrete strong and Zygmund maximal functions.
//
// The continuum strong maximal function takes the supremum of box averages
// over all axis-parallel boxes containing x; the Zygmund variant restricts
// to boxes whose sides satisfy s3 = s1 * s2.  Here the supremum runs over a
// surrogate family: grid-aligned boxes whose per-axis sizes are dyadic cell
// counts 2^t, positioned anywhere (any whole-cell start, including starts
// outside the grid: sums are clipped, volumes are not, so outside mass is
// zero).  The family is capped once a single box can cover the whole grid
// together with x, since further enlargement only dilutes the average.  The
// surrogate under-approximates the continuum value by at most a fixed factor
// (each real box is covered by a family box of at most 4x the side per axis).
//
// Averages use cell counts directly: avg = (box cell sum) / (cells in box),
// which equals mass/volume because the cell volume cancels.
//
// The Zygmund constraint in cell units reads t3 = t1 + t2 + e with
// e = log2(h1 h2 / h3); it is required to be an exact integer (guaranteed
// for power-of-two spacings) and construction throws otherwise.

#include "zygfrac/prefix_table.hpp"

namespace zygfrac {

double strong_maximal(const PrefixSumTable& table, const Vec3& x);
double zygmund_maximal(const PrefixSumTable& table, const Vec3& x);

// OpenMP-parallel batches (deterministic: one output slot per point).
std::vector<double> strong_maximal_batch(const PrefixSumTable& table,
                                         const std::vector<Vec3>& xs);
std::vector<double> zygmund_maximal_batch(const PrefixSumTable& table,
                                          const std::vector<Vec3>& xs);

}  // namespace zygfrac
