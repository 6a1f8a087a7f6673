#pragma once
// Midpoint-rule fractional integral operators and their dyadic shell pieces.
//
//   I f(x)                 = sum over cells  f(y_c) V(x - y_c) vol
//   Delta_{ell,j,k} f(x)   = same sum restricted to cells with x - y_c in
//                            shell (ell, j, k)
//
// A single quadrature pass buckets every cell term by its shell index
// (Neumaier-compensated per bucket, cells visited in lexicographic lattice
// order).  The coarser pieces are then defined hierarchically:
//   slab(ell, j) = sum over ascending k of bucket values,
//   cone(ell)    = sum over ascending j of slab values,
//   total        = sum over ascending ell of cone values,
// so the partition identities
//   sum_k Delta_{ell,j,k} = Delta_{ell,j},  sum_j Delta_{ell,j} = Delta_ell,
//   sum_ell Delta_ell = I
// hold bit-exactly by construction.  `apply` is defined as the bucketed
// total; the flat single-accumulator loop is kept in the tests as the
// serial reference (agreement to roundoff, not bitwise).
//
// Targets are expected to keep half-spacing clearance from source centers
// (corner lattices do); a target colliding with a source center raises the
// kernel singularity error.

#include <optional>
#include <utility>
#include <vector>

#include "zygfrac/dyadic.hpp"
#include "zygfrac/fields.hpp"
#include "zygfrac/geometry.hpp"
#include "zygfrac/kernels.hpp"

namespace zygfrac {

struct OperatorInstance {
    KernelSpec spec;
    QuadratureGrid grid;
};

class ShellDecomposition {
  public:
    explicit ShellDecomposition(std::vector<std::pair<ShellIndex, double>> terms);

    // Bucket value; 0 for shells with no cells.
    double shell(const ShellIndex& idx) const;
    // Sum over k of shell values at fixed (ell, j), ascending k.
    double slab(int ell, int j) const;
    // Sum over j of slab values at fixed ell, ascending j.
    double cone(int ell) const;
    // Sum over ell of cone values, ascending ell.
    double total() const;

    std::vector<int> cone_indices() const;                       // ascending, distinct
    const std::vector<std::pair<ShellIndex, double>>& terms() const { return terms_; }

  private:
    std::vector<std::pair<ShellIndex, double>> terms_;  // sorted by ShellIndex
};

ShellDecomposition decompose(const OperatorInstance& op, const FunctionField& f, const Vec3& x);

double apply(const OperatorInstance& op, const FunctionField& f, const Vec3& x);
double apply_delta(const OperatorInstance& op, const FunctionField& f, int ell, const Vec3& x);
double apply_delta_j(const OperatorInstance& op, const FunctionField& f, int ell, int j,
                     const Vec3& x);
double apply_delta_jk(const OperatorInstance& op, const FunctionField& f, const ShellIndex& idx,
                      const Vec3& x);

// OpenMP-parallel batches; output order matches input order regardless of
// thread count.
std::vector<double> apply_batch(const OperatorInstance& op, const FunctionField& f,
                                const std::vector<Vec3>& xs);
std::vector<ShellDecomposition> decompose_batch(const OperatorInstance& op,
                                                const FunctionField& f,
                                                const std::vector<Vec3>& xs);

// Classical 1D fractional integral, midpoint rule on [lo, hi].
struct Field1D {
    std::function<double(double)> sampler;
    Interval support;
};
double baseline_1d(double alpha, const Field1D& f, const Grid1D& grid, double x);

// Three-exponent product-kernel baseline prod_i |x_i - y_i|^{a_i - 1}
// (no bracket: the tensor product of three 1D operators).
double baseline_3param(const ThreeParamExponents& e, const FunctionField& f,
                       const QuadratureGrid& grid, const Vec3& x);

}  // namespace zygfrac
