// Tests for the summed-area table and the strong/Zygmund maximal functions.
// The production scan must reproduce a brute-force enumeration of the same
// dyadic box family: bit-exactly for indicator fields (integer cell masses,
// power-of-two volumes) and to tight relative tolerance for smooth fields.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "reference.hpp"
#include "zygfrac/fields.hpp"
#include "zygfrac/geometry.hpp"
#include "zygfrac/maximal.hpp"
#include "zygfrac/prefix_table.hpp"
#include "zygfrac/rng.hpp"

using namespace zygfrac;

namespace {

double brute_box_sum(const FunctionField& f, const QuadratureGrid& g, double power, long long i0,
                     long long i1, long long j0, long long j1, long long k0, long long k1) {
    const auto clip = [](long long v, int n) {
        return static_cast<int>(std::clamp(v, 0LL, static_cast<long long>(n)));
    };
    double s = 0.0;
    for (int i = clip(i0, g.counts[0]); i < clip(i1, g.counts[0]); ++i)
        for (int j = clip(j0, g.counts[1]); j < clip(j1, g.counts[1]); ++j)
            for (int k = clip(k0, g.counts[2]); k < clip(k1, g.counts[2]); ++k) {
                double v = f(g.source_point(i, j, k));
                if (v != 0.0 && power != 1.0) v = std::pow(v, power);
                s += v;
            }
    return s;
}

}  // namespace

TEST_CASE("summed-area table reproduces brute-force box sums") {
    const FunctionField f = make_gaussian_like({1.0, 1.0, 1.0});
    const QuadratureGrid g = grid_over(f.support(), {8, 8, 8});
    const PrefixSumTable table(f, g);

    Rng rng(2024);
    for (int n = 0; n < 300; ++n) {
        // Ranges deliberately overshoot the grid on both sides to exercise
        // clipping, and may be empty.
        const long long i0 = static_cast<long long>(rng.uniform_int(0, 14)) - 3;
        const long long i1 = static_cast<long long>(rng.uniform_int(0, 14)) - 3;
        const long long j0 = static_cast<long long>(rng.uniform_int(0, 14)) - 3;
        const long long j1 = static_cast<long long>(rng.uniform_int(0, 14)) - 3;
        const long long k0 = static_cast<long long>(rng.uniform_int(0, 14)) - 3;
        const long long k1 = static_cast<long long>(rng.uniform_int(0, 14)) - 3;
        const double want = brute_box_sum(f, g, 1.0, i0, i1, j0, j1, k0, k1);
        const double got = table.box_sum(i0, i1, j0, j1, k0, k1);
        if (want == 0.0)
            CHECK(got == 0.0);
        else
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }

    CHECK(table.box_sum(5, 5, 0, 8, 0, 8) == 0.0);    // empty range
    CHECK(table.box_sum(6, 2, 0, 8, 0, 8) == 0.0);    // inverted range
    CHECK(table.box_sum(-9, -1, 0, 8, 0, 8) == 0.0);  // fully clipped away
    CHECK(table.total() ==
          doctest::Approx(brute_box_sum(f, g, 1.0, 0, 8, 0, 8, 0, 8)).epsilon(1e-12));

    // Corner prefix values are cumulative box sums from the origin.
    for (int n = 0; n < 50; ++n) {
        const int i = static_cast<int>(rng.uniform_int(0, 8));
        const int j = static_cast<int>(rng.uniform_int(0, 8));
        const int k = static_cast<int>(rng.uniform_int(0, 8));
        CHECK(table.prefix_at(i, j, k) == table.box_sum(0, i, 0, j, 0, k));
    }
}

TEST_CASE("summed-area table applies the power before accumulating") {
    const FunctionField f = scale_field(make_box_indicator({1.0, 1.0, 1.0}), 0.5);
    const QuadratureGrid g = grid_over(Box3{{-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}}, {8, 8, 8});
    const PrefixSumTable lin(f, g, 1.0);
    const PrefixSumTable sq(f, g, 2.0);
    CHECK(lin.total() == 256.0);  // 512 cells * 0.5, all sums exact
    CHECK(sq.total() == 128.0);   // 512 cells * 0.25
    CHECK(sq.power() == 2.0);
}

TEST_CASE("summed-area table rejects fields with negative values") {
    FunctionField neg;
    neg.base_support = Box3{{-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}};
    neg.base = [](double, double, double) { return -1.0; };
    neg.descriptor = "negative";
    const QuadratureGrid g = grid_over(neg.base_support, {4, 4, 4});
    CHECK_THROWS_AS(PrefixSumTable(neg, g), std::invalid_argument);
}

TEST_CASE("strong maximal equals the brute-force family scan") {
    // Indicator fields: every cell mass is an integer and every volume a
    // power of two, so production and reference agree bit for bit.
    const FunctionField box = make_box_indicator({1.0, 1.0, 1.0});
    const QuadratureGrid g = grid_over(box.support(), {8, 8, 8});
    const PrefixSumTable table(box, g);

    const Vec3 points[] = {
        {0.0, 0.0, 0.0},        // on the corner lattice (integer cell coords)
        {0.1, 0.2, 0.3},        // generic interior
        {0.49, -0.49, 0.11},    // near the support boundary
        {0.9, -0.7, 0.2},       // outside the grid entirely
        {-2.0, 3.0, 0.0},       // far outside
        {0.0625, 0.0625, 0.0625},
    };
    for (const Vec3& x : points) {
        const double got = strong_maximal(table, x);
        const double want = testing::maximal_reference(box, g, x, false, 0);
        CHECK(got == want);
    }
    CHECK(strong_maximal(table, {0.0, 0.0, 0.0}) == 1.0);

    // Smooth field: same family, agreement up to prefix-table roundoff.
    const FunctionField bump = make_tensor_bump({1.0, 1.0, 1.0});
    const PrefixSumTable tb(bump, g);
    Rng rng(5150);
    for (int n = 0; n < 12; ++n) {
        const Vec3 x = rng.uniform_in(box.support().inflated(2.0));
        const double got = strong_maximal(tb, x);
        const double want = testing::maximal_reference(bump, g, x, false, 0);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("zygmund maximal equals the brute-force coupled scan") {
    // Unit box on an 8^3 grid: h = (1/8, 1/8, 1/8), so the coupling exponent
    // is log2(h1 h2 / h3) = -3 and the constraint reads t3 = t1 + t2 - 3.
    const FunctionField box = make_box_indicator({1.0, 1.0, 1.0});
    const QuadratureGrid g = grid_over(box.support(), {8, 8, 8});
    const PrefixSumTable table(box, g);

    const Vec3 points[] = {
        {0.0, 0.0, 0.0},
        {0.1, 0.2, 0.3},
        {0.49, -0.49, 0.11},
        {0.9, -0.7, 0.2},
    };
    for (const Vec3& x : points) {
        const double got = zygmund_maximal(table, x);
        const double want = testing::maximal_reference(box, g, x, true, -3);
        CHECK(got == want);
    }
    // A full axis-1 slab (t1 = 3, t2 = 0, t3 = 0) sits inside the support,
    // so the center still reaches average exactly 1.
    CHECK(zygmund_maximal(table, {0.0, 0.0, 0.0}) == 1.0);

    // Anisotropic Zygmund box: h = (1/4, 1/16, 1/8) gives e = -3 as well.
    const FunctionField z = make_zygmund_box(2.0, 0.5);
    const QuadratureGrid gz = grid_over(z.support(), {8, 8, 8});
    const PrefixSumTable tz(z, gz);
    Rng rng(31337);
    for (int n = 0; n < 8; ++n) {
        const Vec3 x = rng.uniform_in(z.support().inflated(1.5));
        const double got = zygmund_maximal(tz, x);
        const double want = testing::maximal_reference(z, gz, x, true, -3);
        CHECK(got == want);
    }

    const FunctionField bump = make_tensor_bump({1.0, 1.0, 1.0});
    const PrefixSumTable tb(bump, g);
    for (int n = 0; n < 8; ++n) {
        const Vec3 x = rng.uniform_in(box.support().inflated(2.0));
        const double got = zygmund_maximal(tb, x);
        const double want = testing::maximal_reference(bump, g, x, true, -3);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("zygmund maximal never exceeds the strong maximal") {
    // The coupled family embeds into the uncoupled one after trimming
    // oversized axes to their covering caps, which can only raise averages.
    const FunctionField fields[] = {make_box_indicator({1.0, 1.0, 1.0}),
                                    make_tensor_bump({1.0, 1.0, 1.0})};
    Rng rng(777);
    for (const auto& f : fields) {
        const QuadratureGrid g = grid_over(f.support(), {16, 16, 16});
        const PrefixSumTable table(f, g);
        for (int n = 0; n < 40; ++n) {
            const Vec3 x = rng.uniform_in(f.support().inflated(2.5));
            const double mz = zygmund_maximal(table, x);
            const double ms = strong_maximal(table, x);
            CHECK(mz <= ms * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("batch maximal evaluation matches the serial loop exactly") {
    const FunctionField f = make_gaussian_like({1.0, 1.0, 1.0});
    const QuadratureGrid g = grid_over(f.support(), {16, 16, 16});
    const PrefixSumTable table(f, g);

    Rng rng(8080);
    std::vector<Vec3> xs;
    for (int n = 0; n < 64; ++n) xs.push_back(rng.uniform_in(f.support().inflated(2.0)));

    const std::vector<double> s_batch = strong_maximal_batch(table, xs);
    const std::vector<double> z_batch = zygmund_maximal_batch(table, xs);
    REQUIRE(s_batch.size() == xs.size());
    REQUIRE(z_batch.size() == xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(s_batch[i] == strong_maximal(table, xs[i]));
        CHECK(z_batch[i] == zygmund_maximal(table, xs[i]));
    }
}

TEST_CASE("zygmund coupling requires a power-of-two spacing ratio") {
    const FunctionField f = make_box_indicator({1.0, 1.0, 1.0});
    // h = (1/3, 1/4, 1/4) makes h1 h2 / h3 = 1/3: not a power of two.
    const QuadratureGrid bad = grid_over(f.support(), {3, 4, 4});
    const PrefixSumTable table(f, bad);
    CHECK_THROWS_AS(zygmund_maximal(table, {0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(zygmund_maximal_batch(table, {{0.0, 0.0, 0.0}}), std::invalid_argument);
    // The strong maximal has no coupling and still works on that grid.
    CHECK(strong_maximal(table, {0.0, 0.0, 0.0}) == 1.0);
}
