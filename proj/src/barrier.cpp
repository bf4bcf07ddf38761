#include "nlac/barrier.hpp"

#include <algorithm>
#include <cmath>

namespace nlac {

double default_profile_constant(int n, double s, double tau) {
    const double base = unit_sphere_measure(n) / (s * tau);
    return std::max(2.0, 1.25 * base);
}

GridFunction build_barrier(const BarrierParams& p, const GridGeometry& geo, double s) {
    p.validate();
    if (p.R > geo.half_width)
        throw std::invalid_argument("build_barrier: B_R does not fit inside the grid box");
    std::vector<double> v(geo.cell_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = norm(geo.cell_center(i), geo.n);
        if (r >= p.R) {
            v[i] = 1.0;
        } else {
            const double profile = p.C_b * std::pow(p.R + 1.0 - r, -2.0 * s);
            v[i] = std::min(p.ceiling, profile) - 1.0;
        }
    }
    const double lo = *std::min_element(v.begin(), v.end());
    return GridFunction(geo, std::move(v), ExteriorData::constant(1.0), std::min(lo, 1.0), 1.0);
}

BarrierReport verify_barrier(const GridFunction& w, const BarrierParams& p, const ModelParams& mp,
                             double tolerance) {
    p.validate();
    mp.validate();
    const auto& geo = w.geometry();

    // The statement needs w = 1 on the complement of B_R.
    if (w.exterior().kind() != ExteriorData::Kind::Constant ||
        w.exterior().constant_value() != 1.0)
        throw std::invalid_argument("verify_barrier: exterior data must be the constant 1");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (norm(geo.cell_center(i), geo.n) >= p.R && w.value(i) != 1.0)
            throw std::invalid_argument("verify_barrier: w must equal 1 outside B_R");
    }

    NonlocalOperator op(geo, mp.s, mp.quadrature, w.exterior());
    const auto lap = op.frac_laplacian_all(w);

    BarrierReport rep;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    double comp = 1.0;
    std::size_t clamped = 0, inside = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = norm(geo.cell_center(i), geo.n);
        if (r >= p.R) continue;
        ++inside;
        const double one_plus = 1.0 + w.value(i);
        const double margin = -lap[i] - p.tau * one_plus;
        rep.cell_radius.push_back(r);
        rep.margin.push_back(margin);
        rep.worst_margin = std::max(rep.worst_margin, margin);
        const double shape = std::pow(p.R + 1.0 - r, -2.0 * mp.s);
        // Smallest C with shape/C <= 1+w <= C*shape at this cell.
        comp = std::max(comp, std::max(one_plus / shape, shape / one_plus));
        if (one_plus >= p.ceiling - 1e-12) ++clamped;
    }
    if (inside == 0) {
        rep.degenerate = true;
        rep.supersolution_ok = true;
        rep.worst_margin = 0.0;
        return rep;
    }
    rep.comparability_C = comp;
    rep.clamped_fraction = static_cast<double>(clamped) / static_cast<double>(inside);
    rep.degenerate = clamped == inside;
    rep.supersolution_ok = rep.worst_margin <= tolerance;
    return rep;
}

}  // namespace nlac
