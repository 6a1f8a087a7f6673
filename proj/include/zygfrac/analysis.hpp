#pragma once
// Experiment layer on top of the operator core.
//
// phi_profile:   cone mass distribution phi_ell(x) = ||f||_p^{-p} * integral
//                of f^p over the cone with eccentricity ell at x; the values
//                partition 1 because numerator buckets and denominator are
//                accumulated from the same samples.
// lambda_of:     balance scale lambda(ell, x) defined by
//                2^{2 lambda - ell} = [phi_ell ||f||_p^p / (Mf)^p]^{1/2};
//                the single-scale estimates decay in |j - lambda|.
// hedberg_check: measures the single-slab bound
//                  Delta_{ell,j} <= C 2^{-2|j-lambda| sigma} ||f||_p^{1-p/q}
//                                   phi_ell^{1/p-1/q} (Mf)^{p/q}
//                and its j-summed form (no decay factor) on sample points,
//                reporting all ratios and their maxima.
// orthogonality_decay:
//                Monte Carlo estimate of
//                  S(h) = integral of sum_ell Delta_ell If * (Delta_{ell-h} If)^{q-1}
//                on a window around the support, with a log-linear fit of
//                S(h) ~ 2^{-eps h} and a bootstrap CI for eps over the
//                x-sample pool (shared across h, so window truncation and
//                common noise cancel in the slope).
// holder_chain_check:
//                the two-step Hoelder chain bounding the q-fold off-diagonal
//                sum by products of pair correlations; both inequalities
//                hold exactly for the empirical measure, so violations can
//                only come from arithmetic, not sampling.
// homogeneity_scaling:
//                operator norm ratio R(delta) = ||I f_delta||_q / ||f_delta||_p
//                for f_delta(x) = f(delta x1, delta x2, delta^2 x3) on
//                dilation-matched lattices; exactly
//                  log2 R(delta) = [4(1/p - 1/q) - 2(alpha+beta)] log2 delta + const,
//                with zero slope precisely at the scale-consistent (p, q).
// operator_shear_identity:
//                transports of the cone pieces, cone masses, maximal
//                function and norms under the shear
//                tau_s x = (x1, 2^{-s} x2, 2^{-s} x3) on matched lattices;
//                the phi / maximal / norm transports are exact in floating
//                point, the cone-piece transport exact up to kernel-log
//                rounding.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "zygfrac/fields.hpp"
#include "zygfrac/geometry.hpp"
#include "zygfrac/maximal.hpp"
#include "zygfrac/operators.hpp"
#include "zygfrac/params.hpp"

namespace zygfrac {

struct ConeMassProfile {
    std::vector<std::pair<int, double>> phi;  // ascending ell
    double total_pow = 0.0;                   // grid integral of f^p
    double phi_at(int ell) const;
    double sum() const;  // ascending-order sum of the phi values
};

ConeMassProfile phi_profile(const FunctionField& f, double p, const QuadratureGrid& grid,
                            const Vec3& x);

std::optional<double> lambda_of(int ell, double phi, double norm_p_pow, double maximal_value,
                                double p);

struct HedbergRow {
    Vec3 x{0, 0, 0};
    int ell = 0;
    int j = 0;  // unused for the j-summed rows
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct HedbergResult {
    std::vector<HedbergRow> est_slab;  // with decay factor, one row per (x, ell, j)
    std::vector<HedbergRow> est_cone;  // j-summed, one row per (x, ell)
    double c_slab_hat = 0.0;
    double c_cone_hat = 0.0;
    double vartheta = 0.0;
    double norm_p = 0.0;
};

HedbergResult hedberg_check(const OperatorParams& prm, const FunctionField& f,
                            const QuadratureGrid& grid, const std::vector<Vec3>& xs);

struct DecayConfig {
    int h_max = 8;
    int fit_lo = 2;
    int n_x = 200;
    std::uint64_t seed = 1;
    double region_scale = 3.0;
    int bootstrap = 1000;
    bool second_kernel_vartheta = false;  // first factor uses the vartheta kernel
};

struct DecayFit {
    std::vector<int> h_values;
    std::vector<double> s_values;  // S(h), same length as h_values
    double eps_hat = 0.0;
    double r2 = 0.0;
    double ci_lo = 0.0;  // bootstrap 2.5% quantile of eps_hat
    double ci_hi = 0.0;  // bootstrap 97.5% quantile
    int fit_lo = 0;
    int fit_hi = 0;
    Box3 region;
    double vartheta = 0.0;  // 0 when the base kernel is used for both factors
};

DecayFit orthogonality_decay(const OperatorParams& prm, const FunctionField& f,
                             const QuadratureGrid& grid, const DecayConfig& cfg);

struct HolderCheck {
    double lhs = 0.0;  // q-fold off-diagonal mean
    double mid = 0.0;  // after pointwise Hoelder over ell
    double rhs = 0.0;  // after Hoelder over the sample mean
};

// rows[i] is the dense cone-value vector of sample i (common indexing);
// offsets h must have exactly q-1 entries, q >= 2 integer.
HolderCheck holder_chain_arrays(const std::vector<std::vector<double>>& rows,
                                const std::vector<int>& h, int q);

HolderCheck holder_chain_check(const OperatorParams& prm, const FunctionField& f,
                               const QuadratureGrid& grid, const std::vector<Vec3>& xs,
                               const std::vector<int>& h);

struct ScalingPoint {
    double delta = 1.0;
    double ratio = 0.0;  // ||I f_delta||_q / ||f_delta||_p
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    double slope = 0.0;      // fitted d log2 R / d log2 delta
    double intercept = 0.0;
    double target_slope = 0.0;  // 4(1/p - 1/q) - 2(alpha + beta)
};

// source_cells per axis for the quadrature grid over supp f; target_cells
// per axis for the L^q window (support inflated by region_scale, an odd
// integer).  region_scale * source_cells / target_cells must be an even
// integer so targets keep half-spacing clearance from sources.
ScalingResult homogeneity_scaling(const OperatorParams& prm, const FunctionField& f,
                                  int source_cells, int target_cells, int region_scale,
                                  const std::vector<double>& deltas);

struct ShearIdentityResult {
    double max_rel_err_delta = 0.0;  // cone-piece transport
    double max_abs_err_phi = 0.0;    // cone-mass transport (expected exactly 0)
    double max_rel_err_maximal = 0.0;  // strong maximal transport (expected exactly 0)
    double norm_ratio_err = 0.0;       // | ||f_s||_p^p / (2^{2s}||f||_p^p) - 1 |
};

ShearIdentityResult operator_shear_identity(const OperatorParams& prm, const FunctionField& f,
                                            const QuadratureGrid& grid, int s,
                                            const std::vector<Vec3>& xs);

}  // namespace zygfrac
