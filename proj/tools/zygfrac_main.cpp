// Command-line front end for the fractional-integral laboratory.
//
// Every experiment subcommand reads a flat key/value config file, runs one
// experiment from the library, and writes two artifacts into --out:
//
//   <command>.csv          data rows, stamped with the config hash
//   <command>.report.json  scalar summary, config echo, same stamp
//
// The stamp is the FNV-1a hash of the canonical config text plus the seed,
// so `compare` can tell apart "different configuration" (exit 2) from
// "same configuration, different numbers" (exit 3).  All randomness flows
// from sampling.seed (overridable with --seed); repeated runs with the same
// config produce byte-identical artifacts.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "zygfrac/analysis.hpp"
#include "zygfrac/config.hpp"
#include "zygfrac/dyadic.hpp"
#include "zygfrac/fields.hpp"
#include "zygfrac/kernels.hpp"
#include "zygfrac/maximal.hpp"
#include "zygfrac/operators.hpp"
#include "zygfrac/params.hpp"
#include "zygfrac/report.hpp"
#include "zygfrac/rng.hpp"

namespace {

using namespace zygfrac;

OperatorParams params_from(const Config& cfg) {
    OperatorParams prm;
    prm.alpha = cfg.get_double("params.alpha");
    prm.beta = cfg.get_double("params.beta");
    prm.theta = cfg.get_double_or("params.theta", 1.0);
    prm.q = cfg.get_double("params.q");
    prm.p = cfg.has("params.p") ? cfg.get_double("params.p")
                                : homogeneous_p(prm.alpha, prm.beta, prm.q);
    validate(prm);
    return prm;
}

FunctionField field_from(const Config& cfg) {
    const std::string kind = cfg.get_string_or("field.kind", "zygmund_box");
    const double s1 = cfg.get_double_or("field.s1", 1.0);
    const double s2 = cfg.get_double_or("field.s2", 1.0);
    const double s3 = cfg.get_double_or("field.s3", s1 * s2);
    FieldKind k;
    if (kind == "zygmund_box")
        k = FieldKind::zygmund_box_indicator;
    else if (kind == "box")
        k = FieldKind::box_indicator;
    else if (kind == "bump")
        k = FieldKind::tensor_bump;
    else if (kind == "gaussian")
        k = FieldKind::gaussian_like;
    else
        throw ConfigError("field.kind: unknown field kind '" + kind + "'");
    return make_field(k, s1, s2, s3);
}

QuadratureGrid grid_from(const Config& cfg, const FunctionField& f) {
    const int n = static_cast<int>(cfg.get_int_or("grid.cells", 32));
    if (n <= 0) throw ConfigError("grid.cells: must be positive");
    return grid_over(f.support(), {n, n, n});
}

std::vector<Vec3> targets_from(const Config& cfg, const std::string& key) {
    const auto pts = cfg.get_points(key);
    return std::vector<Vec3>(pts.begin(), pts.end());
}

std::vector<Vec3> snapped_samples(const QuadratureGrid& grid, const Box3& region, int n,
                                  Rng& rng) {
    std::vector<Vec3> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs.push_back(grid.snap_to_corner_lattice(rng.uniform_in(region)));
    return xs;
}

std::string flag_name(KernelFlag f) {
    switch (f) {
        case KernelFlag::flushed_zero: return "flushed_zero";
        case KernelFlag::flushed_inf: return "flushed_inf";
        default: return "ok";
    }
}

struct Paths {
    std::string csv;
    std::string json;
};

Paths out_paths(const std::string& out_dir, const std::string& command) {
    std::filesystem::create_directories(out_dir);
    const auto base = std::filesystem::path(out_dir) / command;
    return {base.string() + ".csv", base.string() + ".report.json"};
}

// ---------------------------------------------------------------------------

void cmd_kernel_eval(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const std::string variant = cfg.get_string_or("kernel.variant", "zygmund");
    KernelSpec spec;
    double vartheta = 0.0;
    if (variant == "zygmund") {
        spec = KernelSpec::zygmund(params_from(cfg));
    } else if (variant == "zygmund_theta") {
        const OperatorParams prm = params_from(cfg);
        vartheta = cfg.has("kernel.vartheta") ? cfg.get_double("kernel.vartheta")
                                              : compute_vartheta(prm);
        spec = KernelSpec::zygmund_theta(prm, vartheta);
    } else if (variant == "three_param") {
        ThreeParamExponents e{cfg.get_double("kernel.a1"), cfg.get_double("kernel.a2"),
                              cfg.get_double("kernel.a3")};
        spec = KernelSpec::three_param(e);
    } else {
        throw ConfigError("kernel.variant: unknown variant '" + variant + "'");
    }
    const auto points = targets_from(cfg, "points.eval");
    for (const Vec3& x : points)
        if (x[0] == 0.0 || x[1] == 0.0 || x[2] == 0.0)
            throw ConfigError("points.eval: coordinates must be nonzero");

    CsvTable table;
    table.columns = {"x1", "x2", "x3", "log2_value", "value", "flag"};
    long long flushed = 0;
    for (const Vec3& x : points) {
        const double lg = log2_kernel(spec, x);
        const KernelEval ev = eval_kernel_checked(spec, x);
        if (ev.flag != KernelFlag::ok) ++flushed;
        table.add_row({format_double(x[0]), format_double(x[1]), format_double(x[2]),
                       format_double(lg), format_double(ev.value), flag_name(ev.flag)});
    }

    const Paths paths = out_paths(out_dir, "kernel-eval");
    const std::uint64_t h = config_hash(cfg, seed);
    table.write(paths.csv, h);
    ExperimentReport rep{"kernel-eval", cfg, seed, {}, {}};
    rep.measured["points"] = static_cast<double>(points.size());
    rep.measured["flushed"] = static_cast<double>(flushed);
    if (variant == "zygmund_theta") rep.measured["vartheta"] = vartheta;
    rep.notes["variant"] = variant;
    rep.write_json(paths.json);
    std::cout << "kernel-eval: " << points.size() << " points, " << flushed
              << " flushed -> " << paths.csv << "\n";
}

void cmd_partition_check(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const long long pairs = cfg.get_int_or("sampling.pairs", 100000);
    const double lg_lo = cfg.get_double_or("sampling.log2_lo", -12.0);
    const double lg_hi = cfg.get_double_or("sampling.log2_hi", 12.0);
    if (pairs <= 0) throw ConfigError("sampling.pairs: must be positive");
    if (!(lg_lo < lg_hi)) throw ConfigError("sampling.log2_lo: must be below sampling.log2_hi");

    Rng rng(seed);
    auto draw = [&] {
        Vec3 v;
        for (int a = 0; a < 3; ++a)
            v[a] = rng.sign() * std::exp2(rng.uniform(lg_lo, lg_hi));
        return v;
    };

    long long degenerate = 0, bad_member = 0, bad_cone = 0, bad_starred = 0, bad_neighbor = 0;
    for (long long i = 0; i < pairs; ++i) {
        const Vec3 x = draw();
        const Vec3 y = draw();
        const auto idx = classify(x, y);
        if (!idx) {
            ++degenerate;
            continue;
        }
        if (!in_shell(x, y, *idx)) ++bad_member;
        if (!in_cone(x, y, idx->ell)) ++bad_cone;
        if (!starred_shell_contains(x, y, *idx)) ++bad_starred;
        for (int d : {-1, 1}) {
            if (in_shell(x, y, {idx->ell + d, idx->j, idx->k})) ++bad_neighbor;
            if (in_shell(x, y, {idx->ell, idx->j + d, idx->k})) ++bad_neighbor;
            if (in_shell(x, y, {idx->ell, idx->j, idx->k + d})) ++bad_neighbor;
        }
    }

    CsvTable table;
    table.columns = {"metric", "value"};
    auto put = [&](const char* name, long long v) {
        table.add_row({name, std::to_string(v)});
    };
    put("pairs", pairs);
    put("degenerate_gaps", degenerate);
    put("membership_violations", bad_member);
    put("cone_violations", bad_cone);
    put("starred_violations", bad_starred);
    put("neighbor_violations", bad_neighbor);

    const Paths paths = out_paths(out_dir, "partition-check");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"partition-check", cfg, seed, {}, {}};
    rep.measured["pairs"] = static_cast<double>(pairs);
    rep.measured["degenerate_gaps"] = static_cast<double>(degenerate);
    rep.measured["violations"] =
        static_cast<double>(bad_member + bad_cone + bad_starred + bad_neighbor);
    rep.write_json(paths.json);
    std::cout << "partition-check: " << pairs << " pairs, "
              << (bad_member + bad_cone + bad_starred + bad_neighbor) << " violations\n";
}

void cmd_shear_identity(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const OperatorParams prm = params_from(cfg);
    const FunctionField f = field_from(cfg);
    const QuadratureGrid grid = grid_from(cfg, f);
    const int n_x = static_cast<int>(cfg.get_int_or("sampling.x_samples", 50));
    std::vector<long long> svals{-3, -2, -1, 1, 2, 3};
    if (cfg.has("sampling.s_values")) svals = cfg.get_int_list("sampling.s_values");

    Rng rng(seed);
    const Box3 region = f.support().inflated(cfg.get_double_or("sampling.region_scale", 3.0));
    const auto xs = snapped_samples(grid, region, n_x, rng);

    CsvTable table;
    table.columns = {"s", "max_rel_err_delta", "max_abs_err_phi", "max_rel_err_maximal",
                     "norm_ratio_err"};
    double worst_delta = 0.0, worst_phi = 0.0, worst_max = 0.0, worst_norm = 0.0;
    for (long long s : svals) {
        const auto res = operator_shear_identity(prm, f, grid, static_cast<int>(s), xs);
        table.add_row({std::to_string(s), format_double(res.max_rel_err_delta),
                       format_double(res.max_abs_err_phi),
                       format_double(res.max_rel_err_maximal),
                       format_double(res.norm_ratio_err)});
        worst_delta = std::max(worst_delta, res.max_rel_err_delta);
        worst_phi = std::max(worst_phi, res.max_abs_err_phi);
        worst_max = std::max(worst_max, res.max_rel_err_maximal);
        worst_norm = std::max(worst_norm, res.norm_ratio_err);
    }

    const Paths paths = out_paths(out_dir, "shear-identity");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"shear-identity", cfg, seed, {}, {}};
    rep.measured["max_rel_err_delta"] = worst_delta;
    rep.measured["max_abs_err_phi"] = worst_phi;
    rep.measured["max_rel_err_maximal"] = worst_max;
    rep.measured["norm_ratio_err"] = worst_norm;
    rep.measured["x_samples"] = static_cast<double>(n_x);
    rep.write_json(paths.json);
    std::cout << "shear-identity: max cone-piece rel err " << format_double(worst_delta)
              << ", phi abs err " << format_double(worst_phi) << "\n";
}

void cmd_operator_apply(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const OperatorParams prm = params_from(cfg);
    const FunctionField f = field_from(cfg);
    const QuadratureGrid grid = grid_from(cfg, f);
    const std::string variant = cfg.get_string_or("kernel.variant", "zygmund");
    KernelSpec spec;
    if (variant == "zygmund")
        spec = KernelSpec::zygmund(prm);
    else if (variant == "zygmund_theta")
        spec = KernelSpec::zygmund_theta(prm, cfg.has("kernel.vartheta")
                                                  ? cfg.get_double("kernel.vartheta")
                                                  : compute_vartheta(prm));
    else
        throw ConfigError("kernel.variant: operator-apply supports zygmund or zygmund_theta");
    const OperatorInstance op{spec, grid};
    const auto targets = targets_from(cfg, "points.targets");

    const auto decs = decompose_batch(op, f, targets);
    CsvTable table;
    table.columns = {"x1", "x2", "x3", "value", "cones", "ell_lo", "ell_hi"};
    double vmax = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto cones = decs[i].cone_indices();
        const double v = decs[i].total();
        vmax = std::max(vmax, std::abs(v));
        table.add_row({format_double(targets[i][0]), format_double(targets[i][1]),
                       format_double(targets[i][2]), format_double(v),
                       std::to_string(cones.size()),
                       cones.empty() ? "" : std::to_string(cones.front()),
                       cones.empty() ? "" : std::to_string(cones.back())});
    }

    const Paths paths = out_paths(out_dir, "operator-apply");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"operator-apply", cfg, seed, {}, {}};
    rep.measured["targets"] = static_cast<double>(targets.size());
    rep.measured["grid_cells"] = static_cast<double>(grid.counts[0]);
    rep.measured["max_abs_value"] = vmax;
    rep.notes["variant"] = variant;
    rep.write_json(paths.json);
    std::cout << "operator-apply: " << targets.size() << " targets on " << grid.counts[0]
              << "^3 cells\n";
}

void cmd_maximal(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const FunctionField f = field_from(cfg);
    const QuadratureGrid grid = grid_from(cfg, f);
    const double power = cfg.get_double_or("maximal.power", 1.0);
    const auto targets = targets_from(cfg, "points.targets");

    const PrefixSumTable tab(f, grid, power);
    const auto strong = strong_maximal_batch(tab, targets);
    const auto zyg = zygmund_maximal_batch(tab, targets);

    CsvTable table;
    table.columns = {"x1", "x2", "x3", "strong", "zygmund"};
    long long dominated = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (zyg[i] <= strong[i]) ++dominated;
        table.add_row_doubles({targets[i][0], targets[i][1], targets[i][2], strong[i], zyg[i]});
    }

    const Paths paths = out_paths(out_dir, "maximal");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"maximal", cfg, seed, {}, {}};
    rep.measured["targets"] = static_cast<double>(targets.size());
    rep.measured["zygmund_dominated_by_strong"] = static_cast<double>(dominated);
    rep.write_json(paths.json);
    std::cout << "maximal: " << targets.size() << " targets\n";
}

void cmd_hedberg(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const OperatorParams prm = params_from(cfg);
    const FunctionField f = field_from(cfg);
    const QuadratureGrid grid = grid_from(cfg, f);
    const int n_x = static_cast<int>(cfg.get_int_or("sampling.x_samples", 8));

    Rng rng(seed);
    const Box3 region = f.support().inflated(cfg.get_double_or("sampling.region_scale", 3.0));
    const auto xs = snapped_samples(grid, region, n_x, rng);
    const HedbergResult res = hedberg_check(prm, f, grid, xs);

    CsvTable table;
    table.columns = {"kind", "x1", "x2", "x3", "ell", "j", "lhs", "rhs", "ratio"};
    for (const auto& r : res.est_slab)
        table.add_row({"slab", format_double(r.x[0]), format_double(r.x[1]),
                       format_double(r.x[2]), std::to_string(r.ell), std::to_string(r.j),
                       format_double(r.lhs), format_double(r.rhs), format_double(r.ratio)});
    for (const auto& r : res.est_cone)
        table.add_row({"cone", format_double(r.x[0]), format_double(r.x[1]),
                       format_double(r.x[2]), std::to_string(r.ell), "",
                       format_double(r.lhs), format_double(r.rhs), format_double(r.ratio)});

    const Paths paths = out_paths(out_dir, "hedberg");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"hedberg", cfg, seed, {}, {}};
    rep.measured["c_slab_hat"] = res.c_slab_hat;
    rep.measured["c_cone_hat"] = res.c_cone_hat;
    rep.measured["vartheta"] = res.vartheta;
    rep.measured["norm_p"] = res.norm_p;
    rep.measured["slab_rows"] = static_cast<double>(res.est_slab.size());
    rep.measured["cone_rows"] = static_cast<double>(res.est_cone.size());
    rep.write_json(paths.json);
    std::cout << "hedberg: c_slab_hat=" << format_double(res.c_slab_hat)
              << " c_cone_hat=" << format_double(res.c_cone_hat)
              << " over " << n_x << " points\n";
}

void cmd_decay(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const OperatorParams prm = params_from(cfg);
    const FunctionField f = field_from(cfg);
    const QuadratureGrid grid = grid_from(cfg, f);

    DecayConfig dc;
    dc.h_max = static_cast<int>(cfg.get_int_or("sampling.h_max", 8));
    dc.fit_lo = static_cast<int>(cfg.get_int_or("sampling.fit_lo", 2));
    dc.n_x = static_cast<int>(cfg.get_int_or("sampling.x_samples", 200));
    dc.seed = seed;
    dc.region_scale = cfg.get_double_or("sampling.region_scale", 3.0);
    dc.bootstrap = static_cast<int>(cfg.get_int_or("sampling.bootstrap", 1000));
    dc.second_kernel_vartheta = cfg.get_int_or("sampling.second_kernel_vartheta", 0) != 0;

    const DecayFit fit = orthogonality_decay(prm, f, grid, dc);

    CsvTable table;
    table.columns = {"h", "s_value"};
    for (std::size_t i = 0; i < fit.h_values.size(); ++i)
        table.add_row({std::to_string(fit.h_values[i]), format_double(fit.s_values[i])});

    const Paths paths = out_paths(out_dir, "decay");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"decay", cfg, seed, {}, {}};
    rep.measured["eps_hat"] = fit.eps_hat;
    rep.measured["r2"] = fit.r2;
    rep.measured["ci_lo"] = fit.ci_lo;
    rep.measured["ci_hi"] = fit.ci_hi;
    rep.measured["fit_lo"] = static_cast<double>(fit.fit_lo);
    rep.measured["fit_hi"] = static_cast<double>(fit.fit_hi);
    rep.measured["vartheta"] = fit.vartheta;
    rep.write_json(paths.json);
    std::cout << "decay: eps_hat=" << format_double(fit.eps_hat)
              << " ci=[" << format_double(fit.ci_lo) << ", " << format_double(fit.ci_hi)
              << "] r2=" << format_double(fit.r2) << "\n";
}

void cmd_scaling(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const OperatorParams prm = params_from(cfg);
    const FunctionField f = field_from(cfg);
    const int source_cells = static_cast<int>(cfg.get_int_or("scaling.source_cells", 16));
    const int target_cells = static_cast<int>(cfg.get_int_or("scaling.target_cells", 12));
    const int region_scale = static_cast<int>(cfg.get_int_or("scaling.region_scale", 3));
    std::vector<double> deltas{0.25, 0.5, 1.0, 2.0, 4.0};
    if (cfg.has("scaling.deltas")) deltas = cfg.get_double_list("scaling.deltas");

    const ScalingResult res =
        homogeneity_scaling(prm, f, source_cells, target_cells, region_scale, deltas);

    CsvTable table;
    table.columns = {"delta", "ratio"};
    for (const auto& pt : res.points) table.add_row_doubles({pt.delta, pt.ratio});

    const Paths paths = out_paths(out_dir, "scaling");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"scaling", cfg, seed, {}, {}};
    rep.measured["slope"] = res.slope;
    rep.measured["intercept"] = res.intercept;
    rep.measured["target_slope"] = res.target_slope;
    rep.measured["slope_minus_target"] = res.slope - res.target_slope;
    rep.write_json(paths.json);
    std::cout << "scaling: slope=" << format_double(res.slope)
              << " target=" << format_double(res.target_slope) << "\n";
}

void cmd_lemma51(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const int trials = static_cast<int>(cfg.get_int_or("sampling.trials", 10000));
    const int samples = static_cast<int>(cfg.get_int_or("sampling.samples_per_trial", 1000));
    if (trials <= 0) throw ConfigError("sampling.trials: must be positive");
    if (samples <= 0) throw ConfigError("sampling.samples_per_trial: must be positive");

    const Lemma51AuditResult res = lemma51_random_audit(seed, trials, samples);

    CsvTable table;
    table.columns = {"metric", "value"};
    table.add_row({"trials", std::to_string(res.trials)});
    table.add_row({"witness_failures", std::to_string(res.witness_failures)});
    table.add_row({"area_mismatches", std::to_string(res.area_mismatches)});
    table.add_row({"inclusion_failures", std::to_string(res.inclusion_failures)});
    table.add_row({"max_r", std::to_string(res.max_r)});

    const Paths paths = out_paths(out_dir, "lemma51");
    table.write(paths.csv, config_hash(cfg, seed));
    ExperimentReport rep{"lemma51", cfg, seed, {}, {}};
    rep.measured["trials"] = static_cast<double>(res.trials);
    rep.measured["witness_failures"] = static_cast<double>(res.witness_failures);
    rep.measured["area_mismatches"] = static_cast<double>(res.area_mismatches);
    rep.measured["inclusion_failures"] = static_cast<double>(res.inclusion_failures);
    rep.measured["max_r"] = static_cast<double>(res.max_r);
    rep.write_json(paths.json);
    std::cout << "lemma51: " << res.trials << " trials, "
              << res.witness_failures + res.area_mismatches + res.inclusion_failures
              << " failures\n";
}

void cmd_baseline(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    const std::string kind = cfg.get_string("baseline.kind");
    CsvTable table;
    ExperimentReport rep{"baseline", cfg, seed, {}, {}};
    rep.notes["kind"] = kind;

    if (kind == "one_dim") {
        const double alpha = cfg.get_double("baseline.alpha");
        const Interval iv{cfg.get_double_or("baseline.support_lo", 0.0),
                          cfg.get_double_or("baseline.support_hi", 1.0)};
        const int cells = static_cast<int>(cfg.get_int_or("baseline.cells", 4096));
        const auto points = cfg.get_double_list("baseline.points");
        const Field1D fd{[iv](double t) { return iv.contains(t) ? 1.0 : 0.0; }, iv};
        const Grid1D grid = grid_over_1d(iv, cells);
        table.columns = {"x", "value"};
        for (double x : points) table.add_row_doubles({x, baseline_1d(alpha, fd, grid, x)});
        rep.measured["points"] = static_cast<double>(points.size());
        rep.measured["cells"] = static_cast<double>(cells);
    } else if (kind == "three_param") {
        const ThreeParamExponents e{cfg.get_double("baseline.a1"), cfg.get_double("baseline.a2"),
                                    cfg.get_double("baseline.a3")};
        const FunctionField f = field_from(cfg);
        const QuadratureGrid grid = grid_from(cfg, f);
        const auto targets = targets_from(cfg, "points.targets");
        table.columns = {"x1", "x2", "x3", "value"};
        for (const Vec3& x : targets)
            table.add_row_doubles({x[0], x[1], x[2], baseline_3param(e, f, grid, x)});
        rep.measured["points"] = static_cast<double>(targets.size());
        rep.measured["grid_cells"] = static_cast<double>(grid.counts[0]);
    } else {
        throw ConfigError("baseline.kind: expected one_dim or three_param");
    }

    const Paths paths = out_paths(out_dir, "baseline");
    table.write(paths.csv, config_hash(cfg, seed));
    rep.write_json(paths.json);
    std::cout << "baseline (" << kind << "): " << table.rows.size() << " points\n";
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
    std::uint64_t ha = 0, hb = 0;
    try {
        ha = read_stamp(path_a);
        hb = read_stamp(path_b);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (ha != hb) {
        std::cerr << "compare: config hash mismatch (" << hash_hex(ha) << " vs " << hash_hex(hb)
                  << "); artifacts come from different configurations\n";
        return 2;
    }
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    if (slurp(path_a) != slurp(path_b)) {
        std::cerr << "compare: same configuration hash but artifacts differ byte-wise\n";
        return 3;
    }
    std::cout << "compare: identical (" << hash_hex(ha) << ")\n";
    return 0;
}

bool command_needs_seed(const std::string& name) {
    return name == "partition-check" || name == "shear-identity" || name == "hedberg" ||
           name == "decay" || name == "lemma51";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for fractional integrals under two-parameter dilations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed_override = 0;
    int threads = 0;
    std::string cmp_a, cmp_b;

    const std::vector<std::string> experiment_cmds = {
        "kernel-eval",     "partition-check", "shear-identity", "operator-apply", "maximal",
        "hedberg",         "decay",           "scaling",        "lemma51",        "baseline"};
    const std::vector<std::string> descriptions = {
        "evaluate kernels at configured points",
        "randomized audit of the dyadic shell partition",
        "shear transport identities for cone pieces, masses, maximal function",
        "apply the operator and report its cone decomposition",
        "strong and constrained-side maximal functions at configured points",
        "single-scale pointwise estimates against the maximal function",
        "off-diagonal cone correlation decay with bootstrap CI",
        "operator norm ratio across anisotropic dilations",
        "randomized audit of the overlap-cube construction",
        "one-dimensional and product-kernel baselines"};

    std::vector<CLI::App*> subs;
    std::vector<CLI::Option*> seed_opts;
    for (std::size_t i = 0; i < experiment_cmds.size(); ++i) {
        CLI::App* sub = app.add_subcommand(experiment_cmds[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (default: current)");
        seed_opts.push_back(sub->add_option("--seed", seed_override, "override sampling.seed"));
        sub->add_option("--threads", threads, "worker thread count (0 = library default)");
        subs.push_back(sub);
    }
    CLI::App* cmp = app.add_subcommand("compare", "compare two stamped artifacts");
    cmp->add_option("a", cmp_a, "first artifact")->required()->check(CLI::ExistingFile);
    cmp->add_option("b", cmp_b, "second artifact")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b);

        std::size_t which = 0;
        while (which < subs.size() && !subs[which]->parsed()) ++which;
        const std::string name = experiment_cmds[which];

#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        zygfrac::Config cfg = zygfrac::Config::parse_file(config_path);
        if (seed_opts[which]->count() > 0)
            cfg.set("sampling.seed", std::to_string(seed_override));
        std::uint64_t seed = 0;
        if (cfg.has("sampling.seed"))
            seed = cfg.get_u64("sampling.seed");
        else if (command_needs_seed(name))
            throw zygfrac::ConfigError("sampling.seed: required for command '" + name +
                                       "' (set it in the config or pass --seed)");

        if (name == "kernel-eval")
            cmd_kernel_eval(cfg, seed, out_dir);
        else if (name == "partition-check")
            cmd_partition_check(cfg, seed, out_dir);
        else if (name == "shear-identity")
            cmd_shear_identity(cfg, seed, out_dir);
        else if (name == "operator-apply")
            cmd_operator_apply(cfg, seed, out_dir);
        else if (name == "maximal")
            cmd_maximal(cfg, seed, out_dir);
        else if (name == "hedberg")
            cmd_hedberg(cfg, seed, out_dir);
        else if (name == "decay")
            cmd_decay(cfg, seed, out_dir);
        else if (name == "scaling")
            cmd_scaling(cfg, seed, out_dir);
        else if (name == "lemma51")
            cmd_lemma51(cfg, seed, out_dir);
        else
            cmd_baseline(cfg, seed, out_dir);
        return 0;
    } catch (const zygfrac::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const zygfrac::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
