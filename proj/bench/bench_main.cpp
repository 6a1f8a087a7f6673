// Microbenchmarks: kernel evaluation, the bucketed shell decomposition
// against a flat quadrature loop, the OpenMP batch path against repeated
// single-point calls, and the two maximal-function variants.

#include <benchmark/benchmark.h>

#include <vector>

#include "zygfrac/fields.hpp"
#include "zygfrac/geometry.hpp"
#include "zygfrac/kernels.hpp"
#include "zygfrac/maximal.hpp"
#include "zygfrac/operators.hpp"
#include "zygfrac/params.hpp"
#include "zygfrac/prefix_table.hpp"
#include "zygfrac/rng.hpp"

using namespace zygfrac;

namespace {

OperatorParams canonical_params() {
    OperatorParams prm;
    prm.alpha = 0.25;
    prm.beta = 0.25;
    prm.theta = 1.0;
    prm.q = 6.0;
    prm.p = homogeneous_p(prm.alpha, prm.beta, prm.q);
    return prm;
}

std::vector<Vec3> random_points(std::uint64_t seed, int n, const Box3& box) {
    Rng rng(seed);
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(rng.uniform_in(box));
    return pts;
}

const FunctionField& bench_field() {
    static const FunctionField f = make_zygmund_box(1.0, 1.0);
    return f;
}

OperatorInstance bench_operator(int cells) {
    return OperatorInstance{KernelSpec::zygmund(canonical_params()),
                            grid_over(bench_field().support(), {cells, cells, cells})};
}

void BM_KernelEval(benchmark::State& state) {
    const KernelSpec spec = KernelSpec::zygmund(canonical_params());
    const auto pts = random_points(11, 4096, Box3{{-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}});
    for (auto _ : state) {
        double acc = 0.0;
        for (const Vec3& x : pts) acc += eval_kernel(spec, x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_KernelEval);

// Flat quadrature loop: same sum as apply(), no shell bookkeeping.
void BM_FlatQuadrature(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const OperatorInstance op = bench_operator(cells);
    const FunctionField& f = bench_field();
    const Vec3 x = op.grid.snap_to_corner_lattice({0.25, 0.25, 0.25});
    const double w = op.grid.cell_volume();
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 0; i < op.grid.counts[0]; ++i)
            for (int j = 0; j < op.grid.counts[1]; ++j)
                for (int k = 0; k < op.grid.counts[2]; ++k) {
                    const Vec3 y = op.grid.source_point(i, j, k);
                    const double fv = f(y);
                    if (fv == 0.0) continue;
                    acc += eval_kernel(op.spec, {x[0] - y[0], x[1] - y[1], x[2] - y[2]}) * fv * w;
                }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_FlatQuadrature)->Arg(16)->Arg(32);

void BM_Decompose(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const OperatorInstance op = bench_operator(cells);
    const Vec3 x = op.grid.snap_to_corner_lattice({0.25, 0.25, 0.25});
    for (auto _ : state) {
        const ShellDecomposition dec = decompose(op, bench_field(), x);
        benchmark::DoNotOptimize(dec.total());
    }
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(32);

void BM_ApplySerialLoop(benchmark::State& state) {
    const OperatorInstance op = bench_operator(16);
    const auto raw = random_points(13, 32, bench_field().support().inflated(2.0));
    std::vector<Vec3> xs;
    for (const Vec3& p : raw) xs.push_back(op.grid.snap_to_corner_lattice(p));
    for (auto _ : state) {
        double acc = 0.0;
        for (const Vec3& x : xs) acc += apply(op, bench_field(), x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_ApplySerialLoop);

void BM_ApplyBatch(benchmark::State& state) {
    const OperatorInstance op = bench_operator(16);
    const auto raw = random_points(13, 32, bench_field().support().inflated(2.0));
    std::vector<Vec3> xs;
    for (const Vec3& p : raw) xs.push_back(op.grid.snap_to_corner_lattice(p));
    for (auto _ : state) {
        const auto vals = apply_batch(op, bench_field(), xs);
        benchmark::DoNotOptimize(vals.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_ApplyBatch);

void BM_StrongMaximal(benchmark::State& state) {
    const FunctionField& f = bench_field();
    const QuadratureGrid grid = grid_over(f.support(), {16, 16, 16});
    const PrefixSumTable table(f, grid);
    const auto xs = random_points(17, 64, f.support().inflated(2.0));
    for (auto _ : state) {
        double acc = 0.0;
        for (const Vec3& x : xs) acc += strong_maximal(table, x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_StrongMaximal);

void BM_ZygmundMaximal(benchmark::State& state) {
    const FunctionField& f = bench_field();
    const QuadratureGrid grid = grid_over(f.support(), {16, 16, 16});
    const PrefixSumTable table(f, grid);
    const auto xs = random_points(17, 64, f.support().inflated(2.0));
    for (auto _ : state) {
        double acc = 0.0;
        for (const Vec3& x : xs) acc += zygmund_maximal(table, x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_ZygmundMaximal);

}  // namespace

BENCHMARK_MAIN();
