#include "zygfrac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "zygfrac/rng.hpp"

namespace zygfrac {

namespace {

double ipow(double v, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= v;
    return r;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

LineFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw std::invalid_argument("ols: need at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = fit.intercept + fit.slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    fit.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double rel_gap(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

int require_small_integer(double q, const char* what) {
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-12 || r < 2.0 || r > 64.0)
        throw std::invalid_argument(std::string(what) + ": requires a small integer q");
    return static_cast<int>(r);
}

double cone_value_of(const std::vector<std::pair<int, double>>& cones, int ell) {
    const auto it = std::lower_bound(cones.begin(), cones.end(), ell,
                                     [](const auto& a, int b) { return a.first < b; });
    if (it != cones.end() && it->first == ell) return it->second;
    return 0.0;
}

std::vector<std::pair<int, double>> cone_table(const ShellDecomposition& dec) {
    std::vector<std::pair<int, double>> out;
    for (int ell : dec.cone_indices()) out.emplace_back(ell, dec.cone(ell));
    return out;
}

}  // namespace

double ConeMassProfile::phi_at(int ell) const {
    const auto it = std::lower_bound(phi.begin(), phi.end(), ell,
                                     [](const auto& a, int b) { return a.first < b; });
    if (it != phi.end() && it->first == ell) return it->second;
    return 0.0;
}

double ConeMassProfile::sum() const {
    double s = 0.0;
    for (const auto& [ell, v] : phi) s += v;
    return s;
}

ConeMassProfile phi_profile(const FunctionField& f, double p, const QuadratureGrid& grid,
                            const Vec3& x) {
    if (!(p > 0.0)) throw std::invalid_argument("phi_profile: p must be positive");
    if (!grid.covers(f.support()))
        throw std::runtime_error("phi_profile: grid does not cover the field support");
    std::map<int, NeumaierSum> buckets;
    const double vol = grid.cell_volume();
    for (int i = 0; i < grid.counts[0]; ++i)
        for (int j = 0; j < grid.counts[1]; ++j)
            for (int k = 0; k < grid.counts[2]; ++k) {
                const Vec3 y = grid.source_point(i, j, k);
                const double fv = f(y);
                if (fv == 0.0) continue;
                const auto idx = classify(x, y);
                if (!idx)
                    throw std::domain_error(
                        "phi_profile: evaluation point collides with a source center");
                buckets[idx->ell].add(std::pow(fv, p) * vol);
            }
    ConeMassProfile prof;
    double total = 0.0;
    for (const auto& [ell, acc] : buckets) total += acc.value();
    if (!(total > 0.0)) throw std::runtime_error("phi_profile: field has zero mass on the grid");
    prof.total_pow = total;
    for (const auto& [ell, acc] : buckets) prof.phi.emplace_back(ell, acc.value() / total);
    return prof;
}

std::optional<double> lambda_of(int ell, double phi, double norm_p_pow, double maximal_value,
                                double p) {
    if (!(phi > 0.0) || !(maximal_value > 0.0) || !(norm_p_pow > 0.0)) return std::nullopt;
    const double bracket = phi * norm_p_pow / std::pow(maximal_value, p);
    return 0.5 * (static_cast<double>(ell) + 0.5 * std::log2(bracket));
}

HedbergResult hedberg_check(const OperatorParams& prm, const FunctionField& f,
                            const QuadratureGrid& grid, const std::vector<Vec3>& xs) {
    validate(prm);
    HedbergResult res;
    res.vartheta = compute_vartheta(prm);
    const double sigma = sigma_exponent(prm);
    const OperatorInstance op{KernelSpec::zygmund_theta(prm, res.vartheta), grid};
    const PrefixSumTable table(f, grid, 1.0);
    const double norm_p_pow = lp_norm_pow(f, prm.p, grid);
    res.norm_p = std::pow(norm_p_pow, 1.0 / prm.p);

    const std::vector<ShellDecomposition> decs = decompose_batch(op, f, xs);
    const std::vector<double> maximal = strong_maximal_batch(table, xs);

    const double e_norm = 1.0 - prm.p / prm.q;
    const double e_phi = 1.0 / prm.p - 1.0 / prm.q;
    const double e_max = prm.p / prm.q;

    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        const ConeMassProfile prof = phi_profile(f, prm.p, grid, xs[ix]);
        const double mval = maximal[ix];
        const auto& terms = decs[ix].terms();
        std::size_t i = 0;
        while (i < terms.size()) {
            const int ell = terms[i].first.ell;
            const double phi = prof.phi_at(ell);
            const auto lam = lambda_of(ell, phi, norm_p_pow, mval, prm.p);
            const double base =
                std::pow(res.norm_p, e_norm) * std::pow(phi, e_phi) * std::pow(mval, e_max);
            double cone_lhs = 0.0;
            while (i < terms.size() && terms[i].first.ell == ell) {
                const int j = terms[i].first.j;
                double slab_lhs = 0.0;
                while (i < terms.size() && terms[i].first.ell == ell && terms[i].first.j == j) {
                    slab_lhs += terms[i].second;
                    ++i;
                }
                cone_lhs += slab_lhs;
                if (slab_lhs > 0.0 && lam) {
                    const double decay = std::exp2(-2.0 * std::abs(j - *lam) * sigma);
                    const double rhs = decay * base;
                    res.est_slab.push_back(
                        HedbergRow{xs[ix], ell, j, slab_lhs, rhs, slab_lhs / rhs});
                }
            }
            if (cone_lhs > 0.0 && lam) {
                res.est_cone.push_back(HedbergRow{xs[ix], ell, 0, cone_lhs, base, cone_lhs / base});
            }
        }
    }
    for (const auto& r : res.est_slab) res.c_slab_hat = std::max(res.c_slab_hat, r.ratio);
    for (const auto& r : res.est_cone) res.c_cone_hat = std::max(res.c_cone_hat, r.ratio);
    return res;
}

DecayFit orthogonality_decay(const OperatorParams& prm, const FunctionField& f,
                             const QuadratureGrid& grid, const DecayConfig& cfg) {
    validate(prm);
    if (!is_homogeneous(prm))
        throw std::invalid_argument("orthogonality_decay: requires 1/q = 1/p - (alpha+beta)/2");
    const int q = require_small_integer(prm.q, "orthogonality_decay");
    if (q < 3 || (q - 2) * (prm.alpha + prm.beta) * 0.5 < 1.0 - 1e-12)
        throw std::invalid_argument(
            "orthogonality_decay: needs integer q >= 3 with (q-2)(alpha+beta)/2 >= 1");
    if (cfg.h_max < cfg.fit_lo + 2)
        throw std::invalid_argument("orthogonality_decay: fit window too small");
    if (cfg.n_x < 8) throw std::invalid_argument("orthogonality_decay: too few samples");

    DecayFit fit;
    fit.region = f.support().inflated(cfg.region_scale);
    fit.fit_lo = cfg.fit_lo;
    fit.fit_hi = cfg.h_max;

    Rng rng(cfg.seed);
    std::vector<Vec3> xs(cfg.n_x);
    for (auto& x : xs) x = grid.snap_to_corner_lattice(rng.uniform_in(fit.region));

    const OperatorInstance op_base{KernelSpec::zygmund(prm), grid};
    std::vector<std::vector<std::pair<int, double>>> cones1(xs.size()), cones2(xs.size());
    {
        const auto decs = decompose_batch(op_base, f, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) cones2[i] = cone_table(decs[i]);
    }
    if (cfg.second_kernel_vartheta) {
        fit.vartheta = compute_vartheta(prm);
        const OperatorInstance op_vt{KernelSpec::zygmund_theta(prm, fit.vartheta), grid};
        const auto decs = decompose_batch(op_vt, f, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) cones1[i] = cone_table(decs[i]);
    } else {
        cones1 = cones2;
    }

    // Per-sample pair sums g_h(x); one pool shared by every h.
    const double volume = fit.region.volume();
    std::vector<std::vector<double>> g(cfg.h_max + 1, std::vector<double>(xs.size(), 0.0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int h = 0; h <= cfg.h_max; ++h) {
            double s = 0.0;
            for (const auto& [ell, c1] : cones1[i]) {
                const double c2 = cone_value_of(cones2[i], ell - h);
                if (c2 != 0.0) s += c1 * ipow(c2, q - 1);
            }
            g[h][i] = s;
        }
    }

    auto mean_over = [&](const std::vector<double>& vals,
                         const std::vector<std::size_t>* pick) -> double {
        NeumaierSum acc;
        const std::size_t n = pick ? pick->size() : vals.size();
        for (std::size_t i = 0; i < n; ++i) acc.add(pick ? vals[(*pick)[i]] : vals[i]);
        return acc.value() / static_cast<double>(n);
    };

    for (int h = 0; h <= cfg.h_max; ++h) {
        fit.h_values.push_back(h);
        fit.s_values.push_back(volume * mean_over(g[h], nullptr));
    }

    auto fit_eps = [&](const std::vector<std::size_t>* pick) -> std::optional<double> {
        std::vector<double> hx, sy;
        for (int h = cfg.fit_lo; h <= cfg.h_max; ++h) {
            const double s = volume * mean_over(g[h], pick);
            if (s > 0.0) {
                hx.push_back(static_cast<double>(h));
                sy.push_back(std::log2(s));
            }
        }
        if (hx.size() < 3) return std::nullopt;
        return -ols(hx, sy).slope;
    };

    {
        std::vector<double> hx, sy;
        for (int h = cfg.fit_lo; h <= cfg.h_max; ++h) {
            const double s = fit.s_values[h];
            if (s > 0.0) {
                hx.push_back(static_cast<double>(h));
                sy.push_back(std::log2(s));
            }
        }
        if (hx.size() < 3)
            throw std::runtime_error(
                "orthogonality_decay: insufficient signal (S(h) vanished over the fit window)");
        const LineFit lf = ols(hx, sy);
        fit.eps_hat = -lf.slope;
        fit.r2 = lf.r2;
    }

    std::vector<double> eps_boot;
    eps_boot.reserve(cfg.bootstrap);
    std::vector<std::size_t> pick(xs.size());
    for (int b = 0; b < cfg.bootstrap; ++b) {
        for (auto& idx : pick)
            idx = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(xs.size()) - 1));
        if (const auto e = fit_eps(&pick)) eps_boot.push_back(*e);
    }
    if (eps_boot.size() < static_cast<std::size_t>(std::max(16, cfg.bootstrap / 10)))
        throw std::runtime_error("orthogonality_decay: bootstrap replicates degenerate");
    std::sort(eps_boot.begin(), eps_boot.end());
    const auto quant = [&](double a) {
        const double pos = a * static_cast<double>(eps_boot.size() - 1);
        return eps_boot[static_cast<std::size_t>(std::llround(pos))];
    };
    fit.ci_lo = quant(0.025);
    fit.ci_hi = quant(0.975);
    return fit;
}

HolderCheck holder_chain_arrays(const std::vector<std::vector<double>>& rows,
                                const std::vector<int>& h, int q) {
    if (q < 2) throw std::invalid_argument("holder_chain_arrays: q must be >= 2");
    if (h.size() != static_cast<std::size_t>(q - 1))
        throw std::invalid_argument("holder_chain_arrays: need exactly q-1 offsets");
    if (rows.empty()) throw std::invalid_argument("holder_chain_arrays: no samples");
    const std::size_t len = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != len)
            throw std::invalid_argument("holder_chain_arrays: ragged sample rows");

    const double inv = 1.0 / static_cast<double>(q - 1);
    const auto at = [&](const std::vector<double>& d, long long idx) -> double {
        return (idx >= 0 && idx < static_cast<long long>(d.size())) ? d[idx] : 0.0;
    };
    const auto root = [&](double v) { return (q == 2) ? v : std::pow(v, inv); };

    double lhs_sum = 0.0, mid_sum = 0.0;
    std::vector<double> corr_mean(q - 1, 0.0);
    for (const auto& d : rows) {
        double a = 0.0;
        for (std::size_t ell = 0; ell < len; ++ell) {
            double prod = d[ell];
            for (int m = 0; m < q - 1 && prod != 0.0; ++m)
                prod *= at(d, static_cast<long long>(ell) - h[m]);
            a += prod;
        }
        lhs_sum += a;
        double mid_prod = 1.0;
        for (int m = 0; m < q - 1; ++m) {
            double u = 0.0;
            for (std::size_t ell = 0; ell < len; ++ell) {
                const double c2 = at(d, static_cast<long long>(ell) - h[m]);
                if (c2 != 0.0) u += d[ell] * ipow(c2, q - 1);
            }
            mid_prod *= root(u);
            corr_mean[m] += u;
        }
        mid_sum += mid_prod;
    }

    const double n = static_cast<double>(rows.size());
    HolderCheck out;
    out.lhs = lhs_sum / n;
    out.mid = mid_sum / n;
    out.rhs = 1.0;
    for (int m = 0; m < q - 1; ++m) out.rhs *= root(corr_mean[m] / n);
    return out;
}

HolderCheck holder_chain_check(const OperatorParams& prm, const FunctionField& f,
                               const QuadratureGrid& grid, const std::vector<Vec3>& xs,
                               const std::vector<int>& h) {
    validate(prm);
    const int q = require_small_integer(prm.q, "holder_chain_check");
    const OperatorInstance op{KernelSpec::zygmund(prm), grid};
    const auto decs = decompose_batch(op, f, xs);
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& dec : decs)
        for (int ell : dec.cone_indices()) {
            if (!any) {
                lo = hi = ell;
                any = true;
            } else {
                lo = std::min(lo, ell);
                hi = std::max(hi, ell);
            }
        }
    if (!any) throw std::runtime_error("holder_chain_check: all samples see zero field mass");
    std::vector<std::vector<double>> rows(decs.size(), std::vector<double>(hi - lo + 1, 0.0));
    for (std::size_t i = 0; i < decs.size(); ++i)
        for (int ell : decs[i].cone_indices()) rows[i][ell - lo] = decs[i].cone(ell);
    return holder_chain_arrays(rows, h, q);
}

ScalingResult homogeneity_scaling(const OperatorParams& prm, const FunctionField& f,
                                  int source_cells, int target_cells, int region_scale,
                                  const std::vector<double>& deltas) {
    validate(prm);
    if (deltas.size() < 2)
        throw std::invalid_argument("homogeneity_scaling: need at least two dilation factors");
    for (double d : deltas)
        if (!(d > 0.0)) throw std::invalid_argument("homogeneity_scaling: factors must be positive");
    if (region_scale < 1 || region_scale % 2 == 0)
        throw std::invalid_argument("homogeneity_scaling: region_scale must be an odd integer");
    if ((static_cast<long long>(region_scale) * source_cells) % target_cells != 0 ||
        ((static_cast<long long>(region_scale) * source_cells) / target_cells) % 2 != 0)
        throw std::invalid_argument(
            "homogeneity_scaling: region_scale*source_cells/target_cells must be an even integer "
            "(keeps targets clear of source centers)");

    const Box3 supp = f.support();
    const QuadratureGrid base = grid_over(supp, {source_cells, source_cells, source_cells});
    const Box3 window = supp.inflated(static_cast<double>(region_scale));
    const QuadratureGrid tgrid = grid_over(window, {target_cells, target_cells, target_cells});

    std::vector<Vec3> base_targets;
    base_targets.reserve(static_cast<std::size_t>(target_cells) * target_cells * target_cells);
    for (int i = 0; i < target_cells; ++i)
        for (int j = 0; j < target_cells; ++j)
            for (int k = 0; k < target_cells; ++k) base_targets.push_back(tgrid.source_point(i, j, k));

    ScalingResult res;
    res.target_slope = 4.0 * (1.0 / prm.p - 1.0 / prm.q) - 2.0 * (prm.alpha + prm.beta);

    const KernelSpec spec = KernelSpec::zygmund(prm);
    for (double d : deltas) {
        const FunctionField fd = dilate_field(f, d, d);
        const QuadratureGrid sgrid = map_grid(base, d, d, d * d);
        const OperatorInstance op{spec, sgrid};
        std::vector<Vec3> targets(base_targets.size());
        for (std::size_t i = 0; i < base_targets.size(); ++i)
            targets[i] = Vec3{base_targets[i][0] / d, base_targets[i][1] / d,
                              base_targets[i][2] / (d * d)};
        const std::vector<double> vals = apply_batch(op, fd, targets);
        const double w = tgrid.cell_volume() / (d * d * d * d);
        NeumaierSum acc;
        for (double v : vals) acc.add(std::pow(v, prm.q) * w);
        const double norm_q = std::pow(acc.value(), 1.0 / prm.q);
        const double norm_p = lp_norm(fd, prm.p, sgrid);
        res.points.push_back(ScalingPoint{d, norm_q / norm_p});
    }

    std::vector<double> lx, ly;
    for (const auto& pt : res.points) {
        lx.push_back(std::log2(pt.delta));
        ly.push_back(std::log2(pt.ratio));
    }
    const LineFit lf = ols(lx, ly);
    res.slope = lf.slope;
    res.intercept = lf.intercept;
    return res;
}

ShearIdentityResult operator_shear_identity(const OperatorParams& prm, const FunctionField& f,
                                            const QuadratureGrid& grid, int s,
                                            const std::vector<Vec3>& xs) {
    validate(prm);
    ShearIdentityResult res;
    const FunctionField fs = shear_field(f, s);
    const double inv2s = std::ldexp(1.0, -s);
    const QuadratureGrid gs = map_grid(grid, 1.0, inv2s, inv2s);
    const KernelSpec spec = KernelSpec::zygmund(prm);
    const OperatorInstance op{spec, grid};
    const OperatorInstance op_s{spec, gs};
    const double factor = std::exp2(static_cast<double>(s) * (prm.alpha + prm.beta));

    const PrefixSumTable table(f, grid, 1.0);
    const PrefixSumTable table_s(fs, gs, 1.0);

    for (const Vec3& x : xs) {
        const Vec3 x_s{x[0], std::ldexp(x[1], s), std::ldexp(x[2], s)};

        const ShellDecomposition dec = decompose(op, f, x);
        const ShellDecomposition dec_s = decompose(op_s, fs, x_s);
        const auto idx = dec.cone_indices();
        const auto idx_s = dec_s.cone_indices();
        if (idx.size() != idx_s.size()) {
            res.max_rel_err_delta = 1.0;
        } else {
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (idx_s[i] != idx[i] - s) {
                    res.max_rel_err_delta = 1.0;
                    break;
                }
                const double lhs = dec_s.cone(idx_s[i]);
                const double rhs = factor * dec.cone(idx[i]);
                res.max_rel_err_delta = std::max(res.max_rel_err_delta, rel_gap(lhs, rhs));
            }
        }

        const ConeMassProfile prof = phi_profile(f, prm.p, grid, x);
        const ConeMassProfile prof_s = phi_profile(fs, prm.p, gs, x_s);
        if (prof.phi.size() != prof_s.phi.size()) {
            res.max_abs_err_phi = 1.0;
        } else {
            for (std::size_t i = 0; i < prof.phi.size(); ++i) {
                if (prof_s.phi[i].first != prof.phi[i].first - s) {
                    res.max_abs_err_phi = 1.0;
                    break;
                }
                res.max_abs_err_phi = std::max(
                    res.max_abs_err_phi, std::abs(prof_s.phi[i].second - prof.phi[i].second));
            }
        }

        const double m = strong_maximal(table, x);
        const double m_s = strong_maximal(table_s, x_s);
        res.max_rel_err_maximal = std::max(res.max_rel_err_maximal, rel_gap(m, m_s));
    }

    const double ratio = lp_norm_pow(fs, prm.p, gs) / lp_norm_pow(f, prm.p, grid);
    res.norm_ratio_err = std::abs(ratio / std::exp2(2.0 * s) - 1.0);
    return res;
}

}  // namespace zygfrac
