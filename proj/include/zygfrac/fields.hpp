#pragma once
// Nonnegative compactly supported test fields.
//
// A field is a base sampler composed with a per-axis linear scaling
//   f(x) = base(c1 x1, c2 x2, c3 x3),
// so the two dilation families used by the experiments —
//   dilate: (d1, d2)  maps f to x -> f(d1 x1, d2 x2, d1 d2 x3)
//   shear:  integer s maps f to x -> f(x1, 2^{-s} x2, 2^{-s} x3)
// — compose by multiplying the scale vector.  With power-of-two factors the
// composition is exact in floating point, which the transport identities in
// the tests rely on.  The sampler returns exactly 0 outside the declared
// support box (enforced before the base sampler is consulted).

#include <array>
#include <functional>
#include <string>

#include "zygfrac/geometry.hpp"

namespace zygfrac {

enum class FieldKind {
    box_indicator,           // 1 on an axis box, 0 outside
    zygmund_box_indicator,   // box with sides (s1, s2, s1*s2)
    tensor_bump,             // smooth product bump, compact support
    gaussian_like,           // truncated product Gaussian
};

struct FunctionField {
    std::function<double(double, double, double)> base;
    Box3 base_support;                    // support of `base`
    std::array<double, 3> scale{1.0, 1.0, 1.0};
    std::string descriptor;

    double operator()(double x1, double x2, double x3) const {
        const double u1 = scale[0] * x1;
        const double u2 = scale[1] * x2;
        const double u3 = scale[2] * x3;
        if (!base_support.contains({u1, u2, u3})) return 0.0;
        return base(u1, u2, u3);
    }
    double operator()(const Vec3& x) const { return (*this)(x[0], x[1], x[2]); }

    Box3 support() const {
        Box3 out;
        for (int a = 0; a < 3; ++a) {
            out.lo[a] = base_support.lo[a] / scale[a];
            out.hi[a] = base_support.hi[a] / scale[a];
        }
        return out;
    }
};

// Factories; all centered at the origin, sides must be positive.
FunctionField make_box_indicator(const Vec3& sides);
FunctionField make_zygmund_box(double s1, double s2);
FunctionField make_tensor_bump(const Vec3& sides);
FunctionField make_gaussian_like(const Vec3& sides);
FunctionField make_field(FieldKind kind, double s1, double s2, double s3);

// x -> f(d1 x1, d2 x2, d1 d2 x3); d1, d2 > 0.
FunctionField dilate_field(const FunctionField& f, double d1, double d2);
// x -> f(x1, 2^{-s} x2, 2^{-s} x3).
FunctionField shear_field(const FunctionField& f, int s);
// Pointwise combinations (support = bounding box of the union / same box).
FunctionField add_fields(const FunctionField& f, const FunctionField& g);
FunctionField scale_field(const FunctionField& f, double c);

// Midpoint-rule L^p norm over the grid; the grid must cover supp f (throws
// std::runtime_error otherwise).  lp_norm_pow returns the p-th power.
double lp_norm_pow(const FunctionField& f, double p, const QuadratureGrid& grid);
double lp_norm(const FunctionField& f, double p, const QuadratureGrid& grid);

}  // namespace zygfrac
