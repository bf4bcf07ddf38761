// Acceptance suite: every release gate runs here, one line per criterion.
// Each check pins its tolerance in code; the binary exits nonzero if any
// criterion fails. Budgets are wall-clock guards for the stated workloads.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlac/barrier.hpp"
#include "nlac/density.hpp"
#include "nlac/kernel.hpp"
#include "nlac/levelset.hpp"
#include "nlac/minimize.hpp"
#include "nlac/parallel.hpp"
#include "nlac/recursion.hpp"
#include "nlac/report_io.hpp"
#include "nlac/sobolev.hpp"
#include "oracles.hpp"

using namespace nlac;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

ModelParams make_params(int n, double s) {
    ModelParams mp;
    mp.n = n;
    mp.s = s;
    return mp;
}

std::string fmt(double v) { return format_double(v); }

// --- criterion 1: closed-form kernel anchors ---------------------------------

Outcome kernel_anchor() {
    Outcome o;
    const auto mp = make_params(1, 0.25);
    GridGeometry geo(1, Vec{0.5, 0, 0}, 0.5, 1024);
    const auto f = make_indicator(CellMask::all(geo), geo);
    NonlocalOperator op(geo, mp.s, mp.quadrature, ExteriorData::zero());
    const double g = op.gagliardo_sq(f);
    const double cross = op.energy_cross(f, CellMask::all(geo));
    o.require(std::fabs(g - 16.0) / 16.0 <= 0.01, "gagliardo off: " + fmt(g));
    o.require(std::fabs(cross - 8.0) / 8.0 <= 0.01, "interaction with complement off: " + fmt(cross));
    o.note("gagliardo=" + fmt(g) + " cross=" + fmt(cross));
    return o;
}

// --- criterion 2: complement-bound sharpness and positivity ------------------

Outcome complement_bound() {
    Outcome o;
    const auto mp = make_params(1, 0.25);
    {
        GridGeometry geo(1, Vec{0, 0, 0}, 2.0, 512);
        CellMask E(geo.cell_count());
        for (std::size_t i = 0; i < geo.cell_count(); ++i)
            if (std::fabs(geo.cell_center(i)[0]) < 1.0) E.set(i);
        const auto rep = complement_integral(E, Vec{0, 0, 0}, geo, mp);
        const double ratio = rep.integral / rep.bound;
        o.require(ratio >= 0.99 && ratio <= 1.01, "1-D equality case ratio " + fmt(ratio));
        o.note("interval ratio=" + fmt(ratio));
    }
    {
        const auto mp2 = make_params(2, 0.25);
        GridGeometry geo(2, Vec{0, 0, 0}, 1.0, 129);
        CellMask E(geo.cell_count());
        for (std::size_t i = 0; i < geo.cell_count(); ++i)
            if (norm(geo.cell_center(i), 2) < 0.5) E.set(i);
        const Vec center = geo.cell_center(geo.cell_containing(Vec{0, 0, 0}));
        const auto rep = complement_integral(E, center, geo, mp2);
        const double ratio = rep.integral / rep.bound;
        o.require(ratio >= 0.99 && ratio <= 1.01, "2-D equality case ratio " + fmt(ratio));
        o.note("disc ratio=" + fmt(ratio));
    }
    {
        GridGeometry geo(1, Vec{0, 0, 0}, 2.0, 128);
        std::mt19937_64 rng(20240809);
        std::uniform_int_distribution<int> count(1, 40);
        std::uniform_int_distribution<std::size_t> pick(0, geo.cell_count() - 1);
        int violations = 0;
        for (int t = 0; t < 200; ++t) {
            CellMask E(geo.cell_count());
            std::vector<std::size_t> members;
            const int k = count(rng);
            for (int c = 0; c < k; ++c) {
                const auto i = pick(rng);
                E.set(i);
                members.push_back(i);
            }
            const Vec x = geo.cell_center(members[t % members.size()]);
            const auto rep = complement_integral(E, x, geo, mp);
            if (!rep.pass) ++violations;
        }
        o.require(violations == 0, std::to_string(violations) + " random-set violations");
        o.note("random sets: 200, violations=0");
    }
    return o;
}

// --- criterion 3: sequence summation bound -----------------------------------

Outcome summation_bound() {
    Outcome o;
    const auto fix = summation_lemma(std::vector<double>{1.0, 0.0}, 0, 4.0, 1, 0.25);
    o.require(std::fabs(fix.lhs - 4.0 / 3.0) <= 4e-16, "fixture lhs " + fmt(fix.lhs));
    o.require(std::fabs(fix.rhs - 1.0 / 3.0) <= 2e-16, "fixture rhs " + fmt(fix.rhs));

    std::mt19937_64 rng(421);
    const struct {
        int n;
        double s;
    } combos[] = {{1, 0.25}, {2, 0.25}, {2, 0.4}};
    int checked = 0, violations = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto seq = oracle::random_decreasing_sequence(rng);
        for (const double T : {2.0, 4.0, 8.0}) {
            for (const auto& c : combos) {
                const auto rep = summation_lemma(seq, -4, T, c.n, c.s);
                ++checked;
                if (!rep.pass) ++violations;
            }
        }
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.note("sequences=1000 checks=" + std::to_string(checked) + " fixture lhs=" + fmt(fix.lhs) +
           " rhs=" + fmt(fix.rhs));
    return o;
}

// --- criterion 4: sobolev chain (also reused for determinism) ----------------

struct ChainRun {
    bool pass = true;
    int violations = 0;
    std::string csv;
};

ChainRun run_sobolev_chain_suite(std::uint64_t seed) {
    ChainRun out;
    CsvWriter csv({"n", "s", "trial", "lp_norm_sq", "gagliardo", "c2", "c3", "c4"});
    const struct {
        int n;
        double s;
        int cells;
        int trials;
    } combos[] = {{1, 0.1, 128, 100}, {1, 0.25, 128, 100}, {1, 0.4, 128, 100}, {2, 0.25, 24, 100}};
    for (const auto& c : combos) {
        const auto mp = make_params(c.n, c.s);
        GridGeometry geo(c.n, Vec{0, 0, 0}, 1.0, c.cells);
        NonlocalOperator op(geo, mp.s, mp.quadrature, ExteriorData::zero());
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(c.n * 1000 + c.s * 100));
        for (int t = 0; t < c.trials; ++t) {
            const auto f = oracle::random_step_function(geo, rng);
            const auto rep = sobolev_check(f, mp, op);
            if (!rep.pass) {
                ++out.violations;
                out.pass = false;
            }
            csv.row({static_cast<double>(c.n), c.s, static_cast<double>(t), rep.chain[0],
                     rep.gagliardo, rep.chain[1], rep.chain[2], rep.chain[3]});
        }
    }
    out.csv = csv.str();
    return out;
}

Outcome sobolev_chain() {
    Outcome o;
    const auto run = run_sobolev_chain_suite(2024);
    o.require(run.violations == 0, std::to_string(run.violations) + " link violations");
    o.note("400 functions across 4 (n,s) combinations");
    return o;
}

// --- criterion 5: discrete Euler-Lagrange consistency -------------------------

Outcome euler_lagrange_consistency() {
    Outcome o;
    const auto mp = make_params(1, 0.25);
    GridGeometry geo(1, Vec{0, 0, 0}, 2.0, 64);
    const auto W = Potential::quartic();
    const auto omega = CellMask::all(geo);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-0.95, 0.95);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto ext = trial % 2 == 0 ? ExteriorData::half_space(Vec{1, 0, 0}, 1)
                                        : ExteriorData::constant(trial % 4 == 1 ? -1.0 : 0.5);
        NonlocalOperator op(geo, mp.s, mp.quadrature, ext);
        std::vector<double> v(64);
        for (auto& x : v) x = U(rng);
        GridFunction u(geo, v, ext, -1, 1);
        const auto g = op.energy_gradient(u, omega, W);
        const double delta = 1e-6;
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < 64; ++i) {
            auto vp = v, vm = v;
            vp[i] += delta;
            vm[i] -= delta;
            const double ep = op.total_energy(GridFunction(geo, vp, ext, -1, 1), omega, W).total;
            const double em = op.total_energy(GridFunction(geo, vm, ext, -1, 1), omega, W).total;
            worst = std::max(worst, std::fabs((ep - em) / (2 * delta) - g[i]));
            scale = std::max(scale, std::fabs(g[i]));
        }
        worst_rel = std::max(worst_rel, worst / scale);
    }
    o.require(worst_rel <= 1e-5, "gradient mismatch " + fmt(worst_rel));
    o.note("worst relative error " + fmt(worst_rel));
    return o;
}

// --- criterion 6: minimizer sanity --------------------------------------------

Outcome minimizer_sanity() {
    Outcome o;
    const auto mp = make_params(1, 0.25);
    const auto W = Potential::quartic();
    {
        GridGeometry geo(1, Vec{0, 0, 0}, 8.0, 64);
        for (const double phase : {-1.0, 1.0}) {
            MinimizeOptions opts;
            const auto rep =
                minimize(mp, geo, CellMask::all(geo), ExteriorData::constant(phase), W, opts);
            bool exact = rep.converged;
            for (const double v : rep.u.values()) exact = exact && v == phase;
            o.require(exact, "pure phase not exact at " + fmt(phase));
            o.require(rep.energy_trace.back() <= 1e-12, "pure phase energy nonzero");
        }
    }
    {
        GridGeometry geo(1, Vec{0, 0, 0}, 64.0, 512);
        MinimizeOptions opts;
        opts.tolerance = 1e-6;
        const auto rep = minimize(mp, geo, CellMask::all(geo),
                                  ExteriorData::half_space(Vec{1, 0, 0}, 1), W, opts);
        o.require(rep.converged && rep.final_projected_residual <= 1e-6,
                  "layer residual " + fmt(rep.final_projected_residual));
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < rep.u.size(); ++i)
            monotone = monotone && rep.u.value(i + 1) >= rep.u.value(i) - 1e-9;
        o.require(monotone, "layer not monotone");
        double odd = 0.0;
        for (std::size_t i = 0; i < rep.u.size() / 2; ++i)
            odd = std::max(odd, std::fabs(rep.u.value(i) + rep.u.value(rep.u.size() - 1 - i)));
        o.require(odd <= 1e-3, "odd-symmetry defect " + fmt(odd));
        o.note("residual=" + fmt(rep.final_projected_residual) + " odd_defect=" + fmt(odd));
    }
    return o;
}

// --- criteria 7 + 9: density plateau and doubling stability -------------------

struct PlateauRun {
    bool pass = true;
    std::string csv;
    std::vector<double> radii;   // fine radius grid on the largest box
    std::vector<double> volumes;
    std::string detail;
};

PlateauRun run_density_plateau() {
    PlateauRun out;
    const auto mp = make_params(1, 0.25);
    const auto W = Potential::quartic();
    const double h = 0.25;
    CsvWriter csv({"R", "cells", "V", "plateau"});
    for (const double R : {8.0, 16.0, 32.0, 64.0}) {
        const int m = static_cast<int>(std::llround(2.0 * R / h));
        GridGeometry geo(1, Vec{0, 0, 0}, R, m);
        MinimizeOptions opts;
        opts.tolerance = 1e-6;
        const auto rep = minimize(mp, geo, CellMask::all(geo),
                                  ExteriorData::half_space(Vec{1, 0, 0}, 1), W, opts);
        if (!rep.converged) {
            out.pass = false;
            out.detail += "solver failed at R=" + fmt(R) + "; ";
            continue;
        }
        const auto V = volume_profile(rep.u, 0.0, {R});
        const double plateau = V[0] / (2.0 * R);
        csv.row({R, static_cast<double>(m), V[0], plateau});
        if (!(plateau >= 0.4 && plateau <= 0.6)) {
            out.pass = false;
            out.detail += "plateau " + fmt(plateau) + " at R=" + fmt(R) + "; ";
        }
        if (R == 64.0) {
            out.radii = {2, 3, 4, 6, 8, 12, 16, 24, 32};
            out.volumes = volume_profile(rep.u, 0.0, out.radii);
        }
    }
    out.csv = csv.str();
    return out;
}

Outcome density_plateau(PlateauRun& stash) {
    Outcome o;
    stash = run_density_plateau();
    o.require(stash.pass, stash.detail.empty() ? "plateau out of band" : stash.detail);
    o.note("V(R)/(2R) within [0.4, 0.6] at R in {8,16,32,64}");
    return o;
}

Outcome doubling_stability(const PlateauRun& stash) {
    Outcome o;
    {
        std::vector<double> radii, V;
        for (int i = 1; i <= 64; ++i) {
            radii.push_back(i);
            V.push_back(i);
        }
        const auto rep = check_doubling(radii, V, 0.25, 1);
        double worst = 0.0;
        for (const double q : rep.ratio) worst = std::max(worst, std::fabs(q - 0.5));
        o.require(worst <= 1e-6, "synthetic ratio deviates by " + fmt(worst));
    }
    {
        o.require(!stash.volumes.empty(), "no computed volume table");
        if (!stash.volumes.empty()) {
            const auto rep = check_doubling(stash.radii, stash.volumes, 0.25, 1);
            o.require(std::isfinite(rep.empirical_C) && rep.empirical_C > 0.0,
                      "empirical constant not finite");
            o.require(rep.empirical_C <= 2.0 * rep.median,
                      "max " + fmt(rep.empirical_C) + " exceeds 2 x median " + fmt(rep.median));
            o.note("empirical C=" + fmt(rep.empirical_C) + " median=" + fmt(rep.median));
        }
    }
    return o;
}

// --- criterion 8: energy growth exponent --------------------------------------

Outcome energy_growth() {
    Outcome o;
    for (const double s : {0.25, 0.4}) {
        const auto mp = make_params(1, s);
        MinimizeOptions opts;
        opts.tolerance = 1e-6;
        const auto rep = energy_growth_check(mp, Potential::quartic(), {8, 16, 32, 64}, 0.25, opts);
        o.require(!rep.degenerate, "degenerate fit at s=" + fmt(s));
        const double target = 1.0 - 2.0 * s;
        o.require(std::fabs(rep.exponent - target) <= 0.3,
                  "exponent " + fmt(rep.exponent) + " vs " + fmt(target) + " at s=" + fmt(s));
        o.note("s=" + fmt(s) + ": slope=" + fmt(rep.exponent) + " target=" + fmt(target));
    }
    return o;
}

// --- criterion 10: growth recursion engine ------------------------------------

Outcome growth_recursion() {
    Outcome o;
    {
        RecursionParams p;
        p.sigma = 0.5;
        p.nu = 2.0;
        p.gamma = 2.0;
        p.C = 1.05;
        p.R_o = 4.0;
        p.mu = 16.0;
        const auto V = GrowthFunction::power(1.0, 2.0);
        std::vector<double> grid;
        for (int j = 0; j < 40; ++j) grid.push_back(p.R_o * std::pow(p.gamma, j));
        o.require(check_hypothesis(V, p, grid).pass, "power-law hypothesis rejected");
        const auto chain = propagate_lower_bound(V, p, 40);
        o.require(!chain.collapsed && !chain.hypothesis_failed, "chain did not complete");
        o.require(std::fabs(chain.fitted_exponent - p.nu) <= 0.05,
                  "fitted exponent " + fmt(chain.fitted_exponent));
        o.note("fitted=" + fmt(chain.fitted_exponent) + " target=" + fmt(p.nu));
    }
    {
        RecursionParams p;
        p.sigma = 0.5;
        p.nu = 2.0;
        p.gamma = 2.0;
        p.C = 2.0;
        p.R_o = 10.0;
        p.mu = 2.0;
        const auto V = GrowthFunction::constant(2.0);
        std::vector<double> grid;
        for (int j = 0; j < 60; ++j) grid.push_back(p.R_o * std::pow(p.gamma, j));
        const auto rep = check_hypothesis(V, p, grid);
        o.require(!rep.pass && std::isfinite(rep.first_violation_r) && rep.first_violation_r > 0,
                  "constant growth not rejected");
        o.note("constant fails at r=" + fmt(rep.first_violation_r));
    }
    return o;
}

// --- criterion 11: barrier sweep ------------------------------------------------

Outcome barrier_sweep() {
    Outcome o;
    const auto mp = make_params(1, 0.25);
    const double c_grow = find_grow_constant(Potential::quartic(), 512);
    const double tau = c_grow / 4.0;
    const double cb = default_profile_constant(mp.n, mp.s, tau);
    const double h = 0.25;
    double prev = std::numeric_limits<double>::infinity();
    bool nonincreasing = true, any_pass = false, al2_ok = true;
    std::string margins;
    for (const double R : {16.0, 32.0, 64.0, 128.0}) {
        BarrierParams bp;
        bp.R = R;
        bp.tau = tau;
        bp.C_b = cb;
        const double pad = R + 2.0;
        const int m = static_cast<int>(std::llround(2.0 * pad / h));
        GridGeometry geo(1, Vec{0, 0, 0}, 0.5 * m * h, m);
        const auto w = build_barrier(bp, geo, mp.s);
        const auto rep = verify_barrier(w, bp, mp);
        // Two-sided comparability holds by construction: the smallest
        // constant never exceeds max(C_b, ceiling * (R+1)^{2s}).
        const double cap = std::max(cb, 2.0 * std::pow(R + 1.0, 2.0 * mp.s));
        al2_ok = al2_ok && rep.comparability_C <= cap * (1.0 + 1e-12);
        nonincreasing = nonincreasing && rep.worst_margin <= prev + 1e-12;
        prev = rep.worst_margin;
        any_pass = any_pass || rep.worst_margin <= 1e-8;
        margins += (margins.empty() ? "" : ",") + fmt(rep.worst_margin);
        if (rep.degenerate) margins += "(saturated)";
    }
    o.require(al2_ok, "comparability constant above the constructed cap");
    o.require(nonincreasing, "worst margins not nonincreasing: " + margins);
    o.require(any_pass, "no radius with margins <= 1e-8: " + margins);
    o.note("tau=" + fmt(tau) + " C_b=" + fmt(cb) + " margins=[" + margins + "]");
    return o;
}

// --- criterion 12: determinism across thread counts ----------------------------

Outcome determinism() {
    Outcome o;
    std::vector<std::string> chain_out, plateau_out;
    for (const int threads : {1, 4, 8}) {
        par::set_thread_count(threads);
        chain_out.push_back(run_sobolev_chain_suite(2024).csv);
        plateau_out.push_back(run_density_plateau().csv);
    }
    par::set_thread_count(0);
    o.require(chain_out[0] == chain_out[1] && chain_out[0] == chain_out[2],
              "sobolev chain outputs differ across thread counts");
    o.require(plateau_out[0] == plateau_out[1] && plateau_out[0] == plateau_out[2],
              "density plateau outputs differ across thread counts");
    o.note("byte-identical across 1, 4, 8 threads");
    return o;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        double budget_s;
        Outcome result;
        double elapsed = 0.0;
    };

    PlateauRun plateau_stash;
    int failures = 0;

    std::vector<Entry> entries = {
        {"kernel-anchor", 10.0, {}, 0.0},
        {"complement-bound-sharpness", 30.0, {}, 0.0},
        {"sequence-summation-bound", 5.0, {}, 0.0},
        {"sobolev-chain", 300.0, {}, 0.0},
        {"euler-lagrange-consistency", 60.0, {}, 0.0},
        {"minimizer-sanity", 120.0, {}, 0.0},
        {"density-plateau", 600.0, {}, 0.0},
        {"energy-growth-exponent", 600.0, {}, 0.0},
        {"doubling-stability", 60.0, {}, 0.0},
        {"growth-recursion", 10.0, {}, 0.0},
        {"barrier-sweep", 120.0, {}, 0.0},
        {"determinism", 900.0, {}, 0.0},
    };

    for (std::size_t k = 0; k < entries.size(); ++k) {
        auto& e = entries[k];
        const auto t0 = std::chrono::steady_clock::now();
        switch (k) {
            case 0: e.result = kernel_anchor(); break;
            case 1: e.result = complement_bound(); break;
            case 2: e.result = summation_bound(); break;
            case 3: e.result = sobolev_chain(); break;
            case 4: e.result = euler_lagrange_consistency(); break;
            case 5: e.result = minimizer_sanity(); break;
            case 6: e.result = density_plateau(plateau_stash); break;
            case 7: e.result = energy_growth(); break;
            case 8: e.result = doubling_stability(plateau_stash); break;
            case 9: e.result = growth_recursion(); break;
            case 10: e.result = barrier_sweep(); break;
            case 11: e.result = determinism(); break;
        }
        e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.elapsed > e.budget_s)
            e.result.require(false, "over budget: " + format_double(e.elapsed) + "s > " +
                                        format_double(e.budget_s) + "s");
        if (!e.result.pass) ++failures;
        std::printf("[%s] %2zu %-28s (%.1fs) %s\n", e.result.pass ? "PASS" : "FAIL", k + 1, e.name,
                    e.elapsed, e.result.detail.c_str());
        std::fflush(stdout);
    }

    std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", entries.size() - failures,
                entries.size());
    return failures == 0 ? 0 : 1;
}
