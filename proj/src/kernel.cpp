#include "nlac/kernel.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nlac/parallel.hpp"

namespace nlac {

namespace {

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = m * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = m * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int depth = 40) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace

nlohmann::json QuadratureErrorModel::to_json() const {
    return {{"near_depth", near_depth},
            {"kappa", kappa},
            {"gauss_order", gauss_order},
            {"far_field_radius", far_field_radius},
            {"pair_rule", pair_rule},
            {"exterior_scheme", exterior_scheme},
            {"separated_rel_bound", separated_rel_bound},
            {"rim_pair_abs", rim_pair_abs}};
}

NonlocalOperator::NonlocalOperator(const GridGeometry& geo, double s, const QuadratureSettings& q,
                                   const ExteriorData& exterior)
    : geo_(geo), s_(s), q_(q), ext_(exterior), p_(geo.n + 2.0 * s) {
    if (!(s_ > 0.0 && s_ < 1.0)) throw std::invalid_argument("NonlocalOperator: s must be in (0,1)");
    q_.validate();
    const std::size_t cells = geo_.cell_count();
    multi_index_.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) multi_index_[i] = geo_.multi_index(i);
    build_rays();
    build_offset_table();
    build_cell_moments();
}

std::size_t NonlocalOperator::offset_index(std::size_t i, std::size_t j) const {
    const auto& a = multi_index_[i];
    const auto& b = multi_index_[j];
    const auto m = static_cast<std::size_t>(geo_.cells_per_axis);
    std::size_t idx = 0;
    for (int ax = 0; ax < geo_.n; ++ax)
        idx = idx * m + static_cast<std::size_t>(std::abs(a[ax] - b[ax]));
    return idx;
}

double NonlocalOperator::pair_weight(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;  // same-cell contribution is exactly zero
    return offset_weights_[offset_index(i, j)];
}

double NonlocalOperator::separated_pair_quad(const Vec& ca, const Vec& cb, double w) const {
    const int n = geo_.n;
    const double vol2 = std::pow(w, 2 * n);
    if (q_.gauss_order == 1) {
        return vol2 * std::pow(distance(ca, cb, n), -p_);
    }
    // Tensor 2-point Gauss in each cell, normalized weights 1/2 per axis.
    const double delta = 0.5 * w / std::sqrt(3.0);
    const int pts = 1 << n;
    double sum = 0.0;
    for (int ia = 0; ia < pts; ++ia) {
        Vec xa = ca;
        for (int ax = 0; ax < n; ++ax) xa[ax] += ((ia >> ax) & 1) ? delta : -delta;
        for (int ib = 0; ib < pts; ++ib) {
            Vec xb = cb;
            for (int ax = 0; ax < n; ++ax) xb[ax] += ((ib >> ax) & 1) ? delta : -delta;
            sum += std::pow(distance(xa, xb, n), -p_);
        }
    }
    return vol2 * sum / static_cast<double>(pts * pts);
}

double NonlocalOperator::pair_weight_recursive(const Vec& ca, const Vec& cb, double w,
                                               int depth) const {
    const int n = geo_.n;
    const double d = distance(ca, cb, n);
    if (d >= q_.kappa * w || depth == 0) return separated_pair_quad(ca, cb, w);
    const double half = 0.5 * w;
    const double quarter = 0.25 * w;
    const int children = 1 << n;
    double sum = 0.0;
    for (int ia = 0; ia < children; ++ia) {
        Vec sa = ca;
        for (int ax = 0; ax < n; ++ax) sa[ax] += ((ia >> ax) & 1) ? quarter : -quarter;
        for (int ib = 0; ib < children; ++ib) {
            Vec sb = cb;
            for (int ax = 0; ax < n; ++ax) sb[ax] += ((ib >> ax) & 1) ? quarter : -quarter;
            sum += pair_weight_recursive(sa, sb, half, depth - 1);
        }
    }
    return sum;
}

void NonlocalOperator::build_offset_table() {
    const int n = geo_.n;
    const auto m = static_cast<std::size_t>(geo_.cells_per_axis);
    std::size_t table = 1;
    for (int ax = 0; ax < n; ++ax) table *= m;
    offset_weights_.assign(table, 0.0);
    const double h = geo_.h();

    // Weights depend on the absolute index offset only (all cells congruent).
    par::parallel_for(table, [&](std::size_t t) {
        // Decode the offset multi-index.
        std::array<int, 3> off{0, 0, 0};
        std::size_t rest = t;
        for (int ax = n - 1; ax >= 0; --ax) {
            off[ax] = static_cast<int>(rest % m);
            rest /= m;
        }
        bool zero = true;
        for (int ax = 0; ax < n; ++ax) zero = zero && off[ax] == 0;
        if (zero) return;  // same cell
        Vec ca{0.0, 0.0, 0.0}, cb{0.0, 0.0, 0.0};
        for (int ax = 0; ax < n; ++ax) cb[ax] = off[ax] * h;
        offset_weights_[t] = pair_weight_recursive(ca, cb, h, q_.near_depth);
    });
}

void NonlocalOperator::build_rays() {
    ray_dir_.clear();
    ray_weight_.clear();
    const int n = geo_.n;
    if (n == 1) {
        ray_dir_.push_back({1.0, 0.0, 0.0});
        ray_dir_.push_back({-1.0, 0.0, 0.0});
        ray_weight_.assign(2, 1.0);
        return;
    }
    if (n == 2) {
        const int m = q_.angular_points;
        const double w = 2.0 * std::numbers::pi / m;
        for (int k = 0; k < m; ++k) {
            const double th = w * (k + 0.5);
            ray_dir_.push_back({std::cos(th), std::sin(th), 0.0});
            ray_weight_.push_back(w);
        }
        return;
    }
    // n == 3: Gauss-Legendre in cos(theta) x uniform midpoint in phi.
    std::vector<double> mu, gw;
    gauss_legendre(q_.polar_points, mu, gw);
    const int k_phi = q_.angular_points;
    const double wphi = 2.0 * std::numbers::pi / k_phi;
    for (int j = 0; j < q_.polar_points; ++j) {
        const double st = std::sqrt(std::max(0.0, 1.0 - mu[j] * mu[j]));
        for (int i = 0; i < k_phi; ++i) {
            const double phi = wphi * (i + 0.5);
            ray_dir_.push_back({st * std::cos(phi), st * std::sin(phi), mu[j]});
            ray_weight_.push_back(gw[j] * wphi);
        }
    }
}

double NonlocalOperator::boundary_distance(const Vec& x) const {
    double b = std::numeric_limits<double>::infinity();
    for (int ax = 0; ax < geo_.n; ++ax)
        b = std::min(b, geo_.half_width - std::abs(x[ax] - geo_.center[ax]));
    return b;
}

double NonlocalOperator::ray_exit_radius(const Vec& x, const Vec& dir) const {
    double t = std::numeric_limits<double>::infinity();
    for (int ax = 0; ax < geo_.n; ++ax) {
        if (dir[ax] > 0.0)
            t = std::min(t, (geo_.axis_hi(ax) - x[ax]) / dir[ax]);
        else if (dir[ax] < 0.0)
            t = std::min(t, (geo_.axis_lo(ax) - x[ax]) / dir[ax]);
    }
    return t;
}

TailMoments NonlocalOperator::ray_moments(const Vec& x, const Vec& dir, double weight) const {
    const double rho = ray_exit_radius(x, dir);
    const double ts = 2.0 * s_;
    const double base = std::pow(rho, -ts) / ts;  // int_rho^inf r^{-1-2s} dr
    TailMoments t;
    t.m0 = weight * base;
    switch (ext_.kind()) {
        case ExteriorData::Kind::Zero:
            break;
        case ExteriorData::Kind::Constant: {
            const double v = ext_.constant_value();
            t.m1 = v * t.m0;
            t.m2 = v * v * t.m0;
            break;
        }
        case ExteriorData::Kind::HalfSpace: {
            // Along the ray, sign(x.e + r dir.e) flips at most once; both
            // pieces integrate in closed form.
            const double c0 = dot(x, ext_.direction(), geo_.n);
            const double c1 = dot(dir, ext_.direction(), geo_.n);
            double m1_ray;
            if (c1 == 0.0) {
                m1_ray = (c0 > 0.0 ? 1.0 : -1.0) * base;
            } else {
                const double flip = -c0 / c1;
                const double far_sign = c1 > 0.0 ? 1.0 : -1.0;
                if (flip <= rho) {
                    m1_ray = far_sign * base;
                } else {
                    const double mid = std::pow(flip, -ts) / ts;
                    m1_ray = far_sign * (2.0 * mid - base);
                }
            }
            t.m1 = weight * m1_ray;
            t.m2 = t.m0;  // values are +-1
            break;
        }
        case ExteriorData::Kind::Radial: {
            // Numeric along the ray out to the truncation radius, analytic
            // beyond it with the declared limit value.
            const double lim = ext_.limit_at_infinity();
            const double far = std::max(q_.far_field_radius, 2.0 * rho);
            auto point_on_ray = [&](double r) {
                Vec y = x;
                for (int ax = 0; ax < geo_.n; ++ax) y[ax] += r * dir[ax];
                return norm(y, geo_.n);
            };
            auto f1 = [&](double r) {
                return ext_.radial_value(point_on_ray(r)) * std::pow(r, -1.0 - ts);
            };
            auto f2 = [&](double r) {
                const double v = ext_.radial_value(point_on_ray(r));
                return v * v * std::pow(r, -1.0 - ts);
            };
            const double tail = std::pow(far, -ts) / ts;
            const double tol = 1e-11 * (1.0 + base);
            t.m1 = weight * (adaptive_simpson(f1, rho, far, tol) + lim * tail);
            t.m2 = weight * (adaptive_simpson(f2, rho, far, tol) + lim * lim * tail);
            break;
        }
    }
    return t;
}

TailMoments NonlocalOperator::point_tail_moments(const Vec& x) const {
    TailMoments total;
    for (std::size_t k = 0; k < ray_dir_.size(); ++k) {
        const TailMoments t = ray_moments(x, ray_dir_[k], ray_weight_[k]);
        total.m0 += t.m0;
        total.m1 += t.m1;
        total.m2 += t.m2;
    }
    return total;
}

TailMoments NonlocalOperator::cell_moments_recursive(const Vec& c, double w, int depth) const {
    const double b = boundary_distance(c);
    if (b >= q_.kappa * w || depth == 0) {
        TailMoments t = point_tail_moments(c);
        double vol = 1.0;
        for (int ax = 0; ax < geo_.n; ++ax) vol *= w;
        t.m0 *= vol;
        t.m1 *= vol;
        t.m2 *= vol;
        return t;
    }
    const int children = 1 << geo_.n;
    const double quarter = 0.25 * w;
    TailMoments sum;
    for (int ic = 0; ic < children; ++ic) {
        Vec sc = c;
        for (int ax = 0; ax < geo_.n; ++ax) sc[ax] += ((ic >> ax) & 1) ? quarter : -quarter;
        const TailMoments t = cell_moments_recursive(sc, 0.5 * w, depth - 1);
        sum.m0 += t.m0;
        sum.m1 += t.m1;
        sum.m2 += t.m2;
    }
    return sum;
}

void NonlocalOperator::build_cell_moments() {
    const std::size_t cells = geo_.cell_count();
    cell_moments_.resize(cells);
    par::parallel_for(cells, [&](std::size_t i) {
        cell_moments_[i] = cell_moments_recursive(geo_.cell_center(i), geo_.h(), q_.near_depth);
    });
}

double NonlocalOperator::point_to_cell_weight(const Vec& x, std::size_t j) const {
    return point_cell_recursive(x, geo_.cell_center(j), geo_.h(), q_.near_depth);
}

double NonlocalOperator::point_cell_recursive(const Vec& x, const Vec& c, double w,
                                              int depth) const {
    const int n = geo_.n;
    const double d = distance(x, c, n);
    if (d >= q_.kappa * w || depth == 0) {
        double vol = 1.0;
        for (int ax = 0; ax < n; ++ax) vol *= w;
        if (q_.gauss_order == 1) return vol * std::pow(d, -p_);
        const double delta = 0.5 * w / std::sqrt(3.0);
        const int pts = 1 << n;
        double sum = 0.0;
        for (int ic = 0; ic < pts; ++ic) {
            Vec y = c;
            for (int ax = 0; ax < n; ++ax) y[ax] += ((ic >> ax) & 1) ? delta : -delta;
            sum += std::pow(distance(x, y, n), -p_);
        }
        return vol * sum / pts;
    }
    const int children = 1 << n;
    const double quarter = 0.25 * w;
    double sum = 0.0;
    for (int ic = 0; ic < children; ++ic) {
        Vec sc = c;
        for (int ax = 0; ax < n; ++ax) sc[ax] += ((ic >> ax) & 1) ? quarter : -quarter;
        sum += point_cell_recursive(x, sc, 0.5 * w, depth - 1);
    }
    return sum;
}

double NonlocalOperator::gagliardo_sq(const GridFunction& f) const {
    if (f.exterior().kind() != ExteriorData::Kind::Zero)
        throw std::invalid_argument(
            "gagliardo_sq: full-space seminorm requires zero exterior data");
    if (!(f.geometry() == geo_)) throw std::invalid_argument("gagliardo_sq: geometry mismatch");
    const std::size_t cells = f.size();
    const auto* v = f.values().data();
    // Ordered pairs (both orders), plus twice the box x complement part.
    const double pair_part = par::deterministic_sum(cells, [&](std::size_t i) {
        double row = 0.0;
        const double vi = v[i];
        for (std::size_t j = 0; j < cells; ++j) {
            if (j == i) continue;
            const double d = vi - v[j];
            row += d * d * offset_weights_[offset_index(i, j)];
        }
        return row;
    }, 8);
    const double ext_part = par::deterministic_sum(cells, [&](std::size_t i) {
        return v[i] * v[i] * cell_moments_[i].m0;
    });
    return pair_part + 2.0 * ext_part;
}

double NonlocalOperator::energy_inner(const GridFunction& u, const CellMask& omega) const {
    const auto idx = omega.indices();
    const auto* v = u.values().data();
    const double sum = par::deterministic_sum(idx.size(), [&](std::size_t a) {
        const std::size_t i = idx[a];
        const double vi = v[i];
        double row = 0.0;
        for (std::size_t b = 0; b < idx.size(); ++b) {
            const std::size_t j = idx[b];
            if (j == i) continue;
            const double d = vi - v[j];
            row += d * d * offset_weights_[offset_index(i, j)];
        }
        return row;
    }, 8);
    return 0.5 * sum;
}

double NonlocalOperator::energy_cross(const GridFunction& u, const CellMask& omega) const {
    const auto idx = omega.indices();
    const std::size_t cells = geo_.cell_count();
    const auto* v = u.values().data();
    return par::deterministic_sum(idx.size(), [&](std::size_t a) {
        const std::size_t i = idx[a];
        const double vi = v[i];
        double row = 0.0;
        for (std::size_t j = 0; j < cells; ++j) {
            if (omega[j] || j == i) continue;
            const double d = vi - v[j];
            row += d * d * offset_weights_[offset_index(i, j)];
        }
        const TailMoments& m = cell_moments_[i];
        row += vi * vi * m.m0 - 2.0 * vi * m.m1 + m.m2;
        return row;
    }, 8);
}

double NonlocalOperator::energy_interaction(const GridFunction& u, const CellMask& omega) const {
    return energy_inner(u, omega) + energy_cross(u, omega);
}

EnergyBreakdown NonlocalOperator::total_energy(const GridFunction& u, const CellMask& omega,
                                               const Potential& W) const {
    if (u.lower() < -1.0 - 1e-12 || u.upper() > 1.0 + 1e-12)
        throw std::invalid_argument("total_energy: values must lie in [-1, 1]");
    EnergyBreakdown e;
    e.interaction_inner = energy_inner(u, omega);
    e.interaction_cross = energy_cross(u, omega);
    const auto idx = omega.indices();
    const double vol = geo_.cell_volume();
    e.potential_term = par::deterministic_sum(idx.size(), [&](std::size_t a) {
        return vol * W(u.value(idx[a]));
    });
    e.total = e.interaction_inner + e.interaction_cross + e.potential_term;
    return e;
}

double NonlocalOperator::frac_laplacian(const GridFunction& u, std::size_t cell) const {
    if (cell >= u.size()) throw std::out_of_range("frac_laplacian: invalid cell index");
    const std::size_t cells = u.size();
    const auto* v = u.values().data();
    const double vi = v[cell];
    double sum = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
        if (j == cell) continue;
        sum += (vi - v[j]) * offset_weights_[offset_index(cell, j)];
    }
    const TailMoments& m = cell_moments_[cell];
    sum += vi * m.m0 - m.m1;
    return sum / geo_.cell_volume();
}

std::vector<double> NonlocalOperator::frac_laplacian_all(const GridFunction& u) const {
    std::vector<double> out(u.size());
    par::parallel_for(u.size(), [&](std::size_t i) { out[i] = frac_laplacian(u, i); });
    return out;
}

std::vector<double> NonlocalOperator::energy_gradient(const GridFunction& u, const CellMask& omega,
                                                      const Potential& W) const {
    std::vector<double> g(u.size(), 0.0);
    const double vol = geo_.cell_volume();
    const auto idx = omega.indices();
    par::parallel_for(idx.size(), [&](std::size_t a) {
        const std::size_t i = idx[a];
        g[i] = vol * (2.0 * frac_laplacian(u, i) + W.d(u.value(i)));
    });
    return g;
}

QuadratureErrorModel NonlocalOperator::error_model() const {
    QuadratureErrorModel m;
    m.near_depth = q_.near_depth;
    m.kappa = q_.kappa;
    m.gauss_order = q_.gauss_order;
    m.far_field_radius = q_.far_field_radius;
    m.pair_rule = q_.gauss_order == 2 ? "tensor Gauss-2 per cell, recursive 2^n near-field split"
                                      : "midpoint per cell, recursive 2^n near-field split";
    m.exterior_scheme =
        "per-cell polar rays with closed-form radial tails (exact for constant and half-space "
        "data; radial profiles truncated at far_field_radius)";
    const double p = p_;
    if (q_.gauss_order == 2) {
        m.separated_rel_bound =
            geo_.n * p * (p + 1.0) * (p + 2.0) * (p + 3.0) / (1080.0 * std::pow(q_.kappa, 4.0));
    } else {
        m.separated_rel_bound = geo_.n * p * (p + 1.0) / (12.0 * q_.kappa * q_.kappa);
    }
    const double wd = geo_.h() * std::ldexp(1.0, -q_.near_depth);
    m.rim_pair_abs = 4.0 * std::pow(wd, geo_.n - 2.0 * s_);
    return m;
}

double NonlocalOperator::gagliardo_error_allowance(const GridFunction& f, double computed) const {
    const QuadratureErrorModel m = error_model();
    // Sum of squared jumps across face-adjacent cell pairs (both orders).
    double jumps = 0.0;
    const std::size_t cells = f.size();
    const auto mlin = static_cast<std::size_t>(geo_.cells_per_axis);
    for (std::size_t i = 0; i < cells; ++i) {
        const auto& mi = multi_index_[i];
        for (int ax = 0; ax < geo_.n; ++ax) {
            if (mi[ax] + 1 >= geo_.cells_per_axis) continue;
            std::size_t stride = 1;
            for (int b = geo_.n - 1; b > ax; --b) stride *= mlin;
            const double d = f.value(i) - f.value(i + stride);
            jumps += 2.0 * d * d;
        }
    }
    return m.separated_rel_bound * std::abs(computed) + m.rim_pair_abs * jumps;
}

double gagliardo_sq(const GridFunction& f, const ModelParams& mp) {
    mp.validate();
    NonlocalOperator op(f.geometry(), mp.s, mp.quadrature, f.exterior());
    return op.gagliardo_sq(f);
}

double energy_K(const GridFunction& u, const CellMask& omega, const ModelParams& mp) {
    mp.validate();
    NonlocalOperator op(u.geometry(), mp.s, mp.quadrature, u.exterior());
    return op.energy_interaction(u, omega);
}

EnergyBreakdown total_energy(const GridFunction& u, const CellMask& omega, const Potential& W,
                             const ModelParams& mp) {
    mp.validate();
    NonlocalOperator op(u.geometry(), mp.s, mp.quadrature, u.exterior());
    return op.total_energy(u, omega, W);
}

double frac_laplacian(const GridFunction& u, std::size_t cell, const ModelParams& mp) {
    mp.validate();
    NonlocalOperator op(u.geometry(), mp.s, mp.quadrature, u.exterior());
    return op.frac_laplacian(u, cell);
}

}  // namespace nlac
