#include "zygfrac/fields.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zygfrac {

namespace {

Box3 centered_box(const Vec3& sides) {
    Box3 b;
    for (int a = 0; a < 3; ++a) {
        if (!(sides[a] > 0.0))
            throw std::invalid_argument("field sides must be positive");
        b.lo[a] = -0.5 * sides[a];
        b.hi[a] = 0.5 * sides[a];
    }
    return b;
}

std::string sides_str(const Vec3& s) {
    std::ostringstream os;
    os << "(" << s[0] << "," << s[1] << "," << s[2] << ")";
    return os.str();
}

// Smooth bump profile on (-1,1), equal to 1 at 0 and vanishing to all orders
// at the endpoints.
double bump1(double u) {
    const double v = 1.0 - u * u;
    if (v <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / v);
}

}  // namespace

FunctionField make_box_indicator(const Vec3& sides) {
    FunctionField f;
    f.base_support = centered_box(sides);
    f.base = [](double, double, double) { return 1.0; };
    f.descriptor = "box_indicator" + sides_str(sides);
    return f;
}

FunctionField make_zygmund_box(double s1, double s2) {
    if (!(s1 > 0.0) || !(s2 > 0.0))
        throw std::invalid_argument("zygmund box sides must be positive");
    FunctionField f = make_box_indicator({s1, s2, s1 * s2});
    f.descriptor = "zygmund_box(" + std::to_string(s1) + "," + std::to_string(s2) + ")";
    return f;
}

FunctionField make_tensor_bump(const Vec3& sides) {
    FunctionField f;
    f.base_support = centered_box(sides);
    const Vec3 half{0.5 * sides[0], 0.5 * sides[1], 0.5 * sides[2]};
    f.base = [half](double x1, double x2, double x3) {
        return bump1(x1 / half[0]) * bump1(x2 / half[1]) * bump1(x3 / half[2]);
    };
    f.descriptor = "tensor_bump" + sides_str(sides);
    return f;
}

FunctionField make_gaussian_like(const Vec3& sides) {
    FunctionField f;
    f.base_support = centered_box(sides);
    const Vec3 half{0.5 * sides[0], 0.5 * sides[1], 0.5 * sides[2]};
    f.base = [half](double x1, double x2, double x3) {
        const double r2 = (x1 / half[0]) * (x1 / half[0]) + (x2 / half[1]) * (x2 / half[1]) +
                          (x3 / half[2]) * (x3 / half[2]);
        return std::exp(-4.5 * r2);
    };
    f.descriptor = "gaussian_like" + sides_str(sides);
    return f;
}

FunctionField make_field(FieldKind kind, double s1, double s2, double s3) {
    switch (kind) {
        case FieldKind::box_indicator:
            return make_box_indicator({s1, s2, s3});
        case FieldKind::zygmund_box_indicator:
            return make_zygmund_box(s1, s2);
        case FieldKind::tensor_bump:
            return make_tensor_bump({s1, s2, s3});
        case FieldKind::gaussian_like:
            return make_gaussian_like({s1, s2, s3});
    }
    throw std::invalid_argument("make_field: unknown field kind");
}

FunctionField dilate_field(const FunctionField& f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::invalid_argument("dilate_field: factors must be positive");
    FunctionField g = f;
    g.scale[0] = f.scale[0] * d1;
    g.scale[1] = f.scale[1] * d2;
    g.scale[2] = f.scale[2] * (d1 * d2);
    g.descriptor = f.descriptor + " dilated(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
    return g;
}

FunctionField shear_field(const FunctionField& f, int s) {
    // (1, 2^{-s}, 2^{-s}) is the dilation pair (d1, d2) = (1, 2^{-s}).
    FunctionField g = dilate_field(f, 1.0, std::ldexp(1.0, -s));
    g.descriptor = f.descriptor + " sheared(" + std::to_string(s) + ")";
    return g;
}

FunctionField add_fields(const FunctionField& f, const FunctionField& g) {
    FunctionField out;
    const Box3 fs = f.support(), gs = g.support();
    for (int a = 0; a < 3; ++a) {
        out.base_support.lo[a] = std::min(fs.lo[a], gs.lo[a]);
        out.base_support.hi[a] = std::max(fs.hi[a], gs.hi[a]);
    }
    out.base = [f, g](double x1, double x2, double x3) { return f(x1, x2, x3) + g(x1, x2, x3); };
    out.scale = {1.0, 1.0, 1.0};
    out.descriptor = "(" + f.descriptor + " + " + g.descriptor + ")";
    return out;
}

FunctionField scale_field(const FunctionField& f, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("scale_field: factor must be nonnegative");
    FunctionField out;
    out.base_support = f.support();
    out.base = [f, c](double x1, double x2, double x3) { return c * f(x1, x2, x3); };
    out.scale = {1.0, 1.0, 1.0};
    out.descriptor = std::to_string(c) + "*" + f.descriptor;
    return out;
}

double lp_norm_pow(const FunctionField& f, double p, const QuadratureGrid& grid) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    if (!grid.covers(f.support()))
        throw std::runtime_error("lp_norm: grid does not cover the field support");
    NeumaierSum acc;
    const double vol = grid.cell_volume();
    for (int i = 0; i < grid.counts[0]; ++i)
        for (int j = 0; j < grid.counts[1]; ++j)
            for (int k = 0; k < grid.counts[2]; ++k) {
                const double v = f(grid.source_point(i, j, k));
                if (v != 0.0) acc.add(std::pow(v, p) * vol);
            }
    return acc.value();
}

double lp_norm(const FunctionField& f, double p, const QuadratureGrid& grid) {
    return std::pow(lp_norm_pow(f, p, grid), 1.0 / p);
}

}  // namespace zygfrac
