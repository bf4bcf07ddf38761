#include "nlac/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlac {

namespace {

void require_increasing(const std::vector<double>& radii) {
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1]))
            throw std::invalid_argument("radius grid must be strictly increasing");
}

void require_ball_inside(const GridGeometry& geo, double R) {
    if (R > geo.half_width + 1e-12)
        throw std::invalid_argument("radius exceeds the grid box");
}

/// V value at radius t, step semantics: value of the largest grid radius <= t
/// (zero below the first).
double table_value(const std::vector<double>& radii, const std::vector<double>& V, double t) {
    if (t < radii.front()) return 0.0;
    const auto it = std::upper_bound(radii.begin(), radii.end(), t);
    return V[static_cast<std::size_t>(it - radii.begin()) - 1];
}

}  // namespace

std::vector<double> volume_profile(const GridFunction& u, double theta,
                                   const std::vector<double>& radii) {
    require_increasing(radii);
    const auto& geo = u.geometry();
    for (const double R : radii) require_ball_inside(geo, R);
    const double vol = geo.cell_volume();

    // One pass: bucket occupied cells by |center|.
    std::vector<double> dist;
    dist.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u.value(i) > theta) dist.push_back(norm(geo.cell_center(i), geo.n));
    std::sort(dist.begin(), dist.end());

    std::vector<double> V(radii.size(), 0.0);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const auto cnt = std::lower_bound(dist.begin(), dist.end(), radii[k]) - dist.begin();
        V[k] = vol * static_cast<double>(cnt);
    }
    return V;
}

std::vector<double> defect_profile(const GridFunction& u, const GridFunction& w,
                                   double theta_low, double c_grow,
                                   const std::vector<double>& radii) {
    if (!(u.geometry() == w.geometry()))
        throw std::invalid_argument("defect_profile: geometry mismatch");
    require_increasing(radii);
    const auto& geo = u.geometry();
    const double vol = geo.cell_volume();

    std::vector<std::pair<double, double>> cells;  // (|center|, (u-w)^2)
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double ui = u.value(i), wi = w.value(i);
        if (wi < ui && ui <= theta_low) {
            const double d = ui - wi;
            cells.emplace_back(norm(geo.cell_center(i), geo.n), d * d);
        }
    }
    std::sort(cells.begin(), cells.end());

    std::vector<double> A(radii.size(), 0.0);
    std::size_t pos = 0;
    double acc = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        while (pos < cells.size() && cells[pos].first < radii[k]) acc += cells[pos++].second;
        A[k] = c_grow * vol * acc;
    }
    return A;
}

WeightedGrowthReport check_la8(const std::vector<double>& radii, const std::vector<double>& V,
                               double s, int n, double K,
                               const std::vector<double>& eval_radii) {
    if (radii.size() != V.size() || radii.empty())
        throw std::invalid_argument("check_la8: radius/V size mismatch");
    if (!(s > 0.0 && s < 0.5)) throw std::invalid_argument("check_la8: s must be in (0, 1/2)");
    require_increasing(radii);
    for (std::size_t i = 0; i + 1 < V.size(); ++i)
        if (V[i + 1] < V[i] - 1e-12)
            throw std::invalid_argument("check_la8: V must be nondecreasing");

    const std::vector<double>& evals = eval_radii.empty() ? radii : eval_radii;
    WeightedGrowthReport rep;
    rep.radii = evals;
    const double theta = (n - 2.0 * s) / n;

    for (const double R : evals) {
        if (!(R - K > 0.0))
            throw std::invalid_argument("check_la8: need R - K > 0 across the evaluation range");
        // Midpoint Stieltjes sum of (R+1-t)^{-2s} dV(t) over [0, R].
        double rhs = 0.0;
        double prev_r = 0.0, prev_v = 0.0;
        for (std::size_t i = 0; i < radii.size() && radii[i] <= R + 1e-12; ++i) {
            const double dv = V[i] - prev_v;
            if (dv != 0.0) {
                const double mid = 0.5 * (prev_r + radii[i]);
                rhs += std::pow(R + 1.0 - mid, -2.0 * s) * dv;
            }
            prev_r = radii[i];
            prev_v = V[i];
        }
        const double lhs_shape = std::pow(table_value(radii, V, R - K), theta);
        rep.rhs.push_back(rhs);
        rep.lhs_shape.push_back(lhs_shape);
        rep.ratio.push_back(lhs_shape > 0.0 ? rhs / lhs_shape
                                            : std::numeric_limits<double>::quiet_NaN());
    }
    rep.empirical_c3 = std::numeric_limits<double>::infinity();
    for (const double r : rep.ratio) {
        if (std::isnan(r)) continue;
        ++rep.defined;
        rep.empirical_c3 = std::min(rep.empirical_c3, r);
    }
    if (rep.defined == 0) rep.empirical_c3 = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

DoublingReport check_doubling(const std::vector<double>& radii, const std::vector<double>& V,
                              double s, int n) {
    if (radii.size() != V.size()) throw std::invalid_argument("check_doubling: size mismatch");
    require_increasing(radii);
    DoublingReport rep;
    const double theta = (n - 2.0 * s) / n;
    std::vector<double> defined;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        // Find 2r in the table.
        const auto it = std::lower_bound(radii.begin(), radii.end(), 2.0 * r - 1e-9 * r);
        if (it == radii.end() || std::abs(*it - 2.0 * r) > 1e-9 * r) continue;
        const double v2 = V[static_cast<std::size_t>(it - radii.begin())];
        rep.r.push_back(r);
        if (v2 <= 0.0) {
            rep.ratio.push_back(std::numeric_limits<double>::quiet_NaN());
            rep.flagged.push_back(true);
            continue;
        }
        const double val = std::pow(r, 2.0 * s) * std::pow(V[i], theta) / v2;
        rep.ratio.push_back(val);
        rep.flagged.push_back(false);
        defined.push_back(val);
    }
    if (!defined.empty()) {
        rep.empirical_C = *std::max_element(defined.begin(), defined.end());
        std::nth_element(defined.begin(), defined.begin() + defined.size() / 2, defined.end());
        rep.median = defined[defined.size() / 2];
    }
    return rep;
}

DensityTheoremReport density_theorem_check(const GridFunction& u, double theta1, double theta2,
                                           const std::vector<double>& radii, double r_min,
                                           double ratio_floor) {
    DensityTheoremReport rep;
    const auto& geo = u.geometry();
    const Vec origin{0.0, 0.0, 0.0};
    rep.origin_value = u.value(geo.cell_containing(origin));
    rep.hypothesis_ok = rep.origin_value > theta1;
    if (!rep.hypothesis_ok) return rep;  // vacuous: check skipped

    rep.radii = radii;
    const auto V = volume_profile(u, theta2, radii);
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double ratio = V[i] / std::pow(radii[i], geo.n);
        rep.ratio.push_back(ratio);
        if (radii[i] >= r_min) rep.min_ratio = std::min(rep.min_ratio, ratio);
        if (ratio < ratio_floor) rep.empirical_R_bar = radii[i];
    }
    return rep;
}

GrowthFitReport energy_growth_check(const ModelParams& mp, const Potential& W,
                                    const std::vector<double>& radii, double h,
                                    const MinimizeOptions& opts) {
    mp.require_density_range();
    require_increasing(radii);
    if (radii.size() < 4)
        throw std::invalid_argument("energy_growth_check: need at least 4 radii");

    GrowthFitReport rep;
    rep.radii = radii;
    Vec e1{0.0, 0.0, 0.0};
    e1[0] = 1.0;

    for (const double R : radii) {
        const int m = std::max(2, static_cast<int>(std::llround(2.0 * R / h)));
        GridGeometry geo(mp.n, Vec{0.0, 0.0, 0.0}, 0.5 * m * h, m);
        const auto ext = ExteriorData::half_space(e1, mp.n);
        MinimizeReport run = minimize(mp, geo, CellMask::all(geo), ext, W, opts);
        if (!run.converged)
            throw std::runtime_error("energy_growth_check: solver did not converge at R = " +
                                     std::to_string(R));
        NonlocalOperator op(geo, mp.s, mp.quadrature, ext);
        const CellMask ball = CellMask::ball(geo, Vec{0.0, 0.0, 0.0}, R);
        const double E = op.total_energy(run.u, ball, W).total;
        rep.energy.push_back(E);
        rep.runs.push_back(std::move(run));
    }

    for (const double E : rep.energy)
        if (!(E > 0.0)) rep.degenerate = true;
    if (rep.degenerate) return rep;

    // Least-squares slope of log E against log R.
    const std::size_t m = radii.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log(radii[i]), y = std::log(rep.energy[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    rep.exponent = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - rep.exponent * sx) / m;
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = std::log(rep.energy[i]) - rep.exponent * std::log(radii[i]) - intercept;
        ss += d * d;
    }
    rep.residual = std::sqrt(ss / m);
    return rep;
}

}  // namespace nlac
