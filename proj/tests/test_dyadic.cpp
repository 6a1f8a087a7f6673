// Dyadic shell classification: frozen examples, exact boundary behavior,
// agreement between classify and the membership predicates, the widened
// shells, the annulus projections, and the overlap-cube construction with
// its exact dyadic area.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "zygfrac/dyadic.hpp"
#include "zygfrac/rng.hpp"

using namespace zygfrac;

TEST_CASE("frozen classification example") {
    // Gap (1.5, 0.75, 2): magnitudes in [2^0,2^1), [2^-1,2^0), [2^1,2^2).
    const auto idx = classify({1.5, 0.75, 2.0}, {0.0, 0.0, 0.0});
    REQUIRE(idx.has_value());
    CHECK(idx->ell == 1);
    CHECK(idx->j == 0);
    CHECK(idx->k == -2);  // j + (j - ell) - m3 = 0 + (-1) - 1
}

TEST_CASE("classification is exact on dyadic boundaries") {
    // |gap| exactly 2^m belongs to the shell with lower endpoint 2^m.
    const auto lo = classify({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0});
    REQUIRE(lo.has_value());
    CHECK(*lo == ShellIndex{0, 0, 0});
    // Nudging any coordinate just below the boundary moves exactly one index.
    const double below = std::nextafter(1.0, 0.0);
    const auto idx = classify({below, 1.0, 1.0}, {0.0, 0.0, 0.0});
    REQUIRE(idx.has_value());
    CHECK(idx->j == -1);
    CHECK(idx->ell == -1);  // m2 stays 0
    CHECK(idx->k == -1);    // m3 stays 0 and j - ell stays 0, so k tracks j
}

TEST_CASE("degenerate gaps and non-finite inputs") {
    CHECK_FALSE(classify({1.0, 2.0, 3.0}, {1.0, 0.0, 0.0}).has_value());
    CHECK_FALSE(classify({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}).has_value());
    CHECK_THROWS_AS(classify({std::numeric_limits<double>::infinity(), 1.0, 1.0},
                             {0.0, 0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(classify({std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0},
                             {0.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("classify agrees with the membership predicates") {
    Rng rng(2024);
    for (int i = 0; i < 20000; ++i) {
        Vec3 x, y;
        for (int a = 0; a < 3; ++a) {
            x[a] = rng.sign() * std::exp2(rng.uniform(-10.0, 10.0));
            y[a] = rng.sign() * std::exp2(rng.uniform(-10.0, 10.0));
        }
        const auto idx = classify(x, y);
        REQUIRE(idx.has_value());
        CHECK(in_shell(x, y, *idx));
        CHECK(in_cone(x, y, idx->ell));
        CHECK(starred_shell_contains(x, y, *idx));
        CHECK_FALSE(in_shell(x, y, {idx->ell + 1, idx->j, idx->k}));
        CHECK_FALSE(in_shell(x, y, {idx->ell - 1, idx->j, idx->k}));
        CHECK_FALSE(in_shell(x, y, {idx->ell, idx->j + 1, idx->k}));
        CHECK_FALSE(in_shell(x, y, {idx->ell, idx->j - 1, idx->k}));
        CHECK_FALSE(in_shell(x, y, {idx->ell, idx->j, idx->k + 1}));
        CHECK_FALSE(in_shell(x, y, {idx->ell, idx->j, idx->k - 1}));
        CHECK_FALSE(in_cone(x, y, idx->ell + 1));
    }
}

TEST_CASE("starred shells widen the first two axes by 2^3 and fix the third") {
    const ShellIndex idx{0, 0, 0};
    // (x1, x2) may drift down to 2^{-3} and up to (almost) 2^{3}.
    CHECK(starred_shell_contains({0.125, 1.0, 1.0}, {0, 0, 0}, idx));
    CHECK(starred_shell_contains({7.99, 1.0, 1.0}, {0, 0, 0}, idx));
    CHECK_FALSE(starred_shell_contains({0.124, 1.0, 1.0}, {0, 0, 0}, idx));
    CHECK_FALSE(starred_shell_contains({8.0, 1.0, 1.0}, {0, 0, 0}, idx));
    // The third axis window is not widened.
    CHECK_FALSE(starred_shell_contains({1.0, 1.0, 0.99}, {0, 0, 0}, idx));
    CHECK_FALSE(starred_shell_contains({1.0, 1.0, 2.0}, {0, 0, 0}, idx));
}

TEST_CASE("projection matches per-axis shell membership") {
    Rng rng(15);
    for (int i = 0; i < 5000; ++i) {
        const int j = static_cast<int>(rng.uniform_int(-4, 4));
        const int ell = static_cast<int>(rng.uniform_int(-4, 4));
        const double y1 = rng.uniform(-4.0, 4.0), y2 = rng.uniform(-4.0, 4.0);
        const bool starred = rng.uniform01() < 0.5;
        const RectProjection pr = projection(y1, y2, ell, j, starred);
        const double t1 = rng.uniform(-40.0, 40.0), t2 = rng.uniform(-40.0, 40.0);
        const double d1 = std::abs(t1 - y1), d2 = std::abs(t2 - y2);
        // Starred windows span [2^{m-3}, 2^{m+3}) around the scale 2^m of the
        // plain shell's lower endpoint; unstarred ones are [2^m, 2^{m+1}).
        const int w = starred ? 3 : 0;
        const int up = starred ? 2 : 0;
        const bool in1 = d1 >= std::exp2(j - w) && d1 < std::exp2(j + 1 + up);
        const bool in2 = d2 >= std::exp2(j - ell - w) && d2 < std::exp2(j - ell + 1 + up);
        CHECK(pr.contains(t1, t2) == (in1 && in2));
    }
}

TEST_CASE("overlap cube: frozen small configuration") {
    // Anchor scales (ell, j) = (5, 0); one competitor at scale j_nu = -2
    // (regime: j - ell = -5 < j_nu - 2 = -4 < -2 = j - 2).
    const double y1 = 0.0, y2 = 0.0;
    const int ell = 5, j = 0, j_nu = -2;
    // Competitor annulus centers chosen so its axis-1 / axis-2 annuli around
    // (0.3, 1.2 * 2^{j-ell}) overlap the anchor projection comfortably.
    const std::vector<Lemma51Witness> others{
        {{1.35 - std::exp2(j_nu) * 1.5, 1.5 * std::exp2(j - ell) - std::exp2(j_nu) * 1.5},
         j_nu}};
    const auto cube = lemma51_cube(y1, y2, ell, j, others);
    REQUIRE(cube.has_value());
    CHECK(cube->j_nu == j_nu);
    CHECK(cube->r == j - j_nu + 2);
    CHECK(cube->area == std::exp2(2.0 * j_nu - 5.0));  // exact power of two
    CHECK(cube->q1.length() == doctest::Approx(std::exp2(j_nu - 3.0)).epsilon(1e-12));
    CHECK(cube->q2.measure() == std::exp2(j_nu - 2.0));
    // The witness satisfies every constraint it was searched under.
    const RectProjection own = projection(y1, y2, cube->r, j, true);
    CHECK(own.contains(cube->witness[0], cube->witness[1]));
    for (const auto& o : others) {
        const RectProjection po = projection(o.point[0], o.point[1], 0, o.j, true);
        CHECK(po.contains(cube->witness[0], cube->witness[1]));
    }
}

TEST_CASE("overlap cube rejects configurations outside its regime") {
    const std::vector<Lemma51Witness> others{{{0.3, 0.1}, 1}};  // j_nu too large
    CHECK_THROWS_AS(lemma51_cube(0.0, 0.0, 5, 0, others), std::invalid_argument);
    const std::vector<Lemma51Witness> tight{{{0.3, 0.1}, -4}};  // j_nu - 2 <= j - ell
    CHECK_THROWS_AS(lemma51_cube(0.0, 0.0, 2, 0, tight), std::invalid_argument);
    CHECK_THROWS_AS(lemma51_cube(0.0, 0.0, 5, 0, {}), std::invalid_argument);
}

TEST_CASE("randomized overlap-cube audit finds no failures") {
    const auto res = lemma51_random_audit(99, 500, 200);
    CHECK(res.trials == 500);
    CHECK(res.witness_failures == 0);
    CHECK(res.area_mismatches == 0);
    CHECK(res.inclusion_failures == 0);
    CHECK(res.max_r >= 4);
}
