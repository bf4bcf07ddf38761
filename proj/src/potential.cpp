#include "nlac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace nlac {

Potential Potential::quartic() {
    Potential p;
    p.w_ = [](double t) { const double q = 1.0 - t * t; return 0.25 * q * q; };
    p.dw_ = [](double t) { return t * t * t - t; };
    p.d2w_ = [](double t) { return 3.0 * t * t - 1.0; };
    p.name_ = "quartic";
    return p;
}

Potential Potential::analytic(std::function<double(double)> w, std::function<double(double)> dw,
                              std::function<double(double)> d2w, std::string name) {
    Potential p;
    p.w_ = std::move(w);
    p.dw_ = std::move(dw);
    p.d2w_ = std::move(d2w);
    p.name_ = std::move(name);
    return p;
}

namespace {

/// Fritsch-Carlson shape-preserving cubic Hermite slopes, with the
/// non-centered three-point rule at the endpoints.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    d[0] = endpoint(x[1] - x[0], x[2] - x[1], delta[0], delta[1]);
    d[n - 1] = endpoint(x[n - 1] - x[n - 2], x[n - 2] - x[n - 3], delta[n - 2], delta[n - 3]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    return d;
}

struct Pchip {
    std::vector<double> x, y, d;

    std::size_t interval(double t) const {
        if (t <= x.front()) return 0;
        if (t >= x.back()) return x.size() - 2;
        const auto it = std::upper_bound(x.begin(), x.end(), t);
        return static_cast<std::size_t>(it - x.begin()) - 1;
    }

    double eval(double t) const {
        const std::size_t i = interval(t);
        const double h = x[i + 1] - x[i];
        const double u = (t - x[i]) / h;
        const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        const double h10 = u * (1 - u) * (1 - u);
        const double h01 = u * u * (3 - 2 * u);
        const double h11 = u * u * (u - 1);
        return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
    }

    double deriv(double t) const {
        const std::size_t i = interval(t);
        const double h = x[i + 1] - x[i];
        const double u = (t - x[i]) / h;
        const double g00 = 6 * u * u - 6 * u;
        const double g10 = 3 * u * u - 4 * u + 1;
        const double g01 = -6 * u * u + 6 * u;
        const double g11 = 3 * u * u - 2 * u;
        return (g00 * y[i] + g01 * y[i + 1]) / h + g10 * d[i] + g11 * d[i + 1];
    }

    double deriv2(double t) const {
        const std::size_t i = interval(t);
        const double h = x[i + 1] - x[i];
        const double u = (t - x[i]) / h;
        const double k00 = 12 * u - 6;
        const double k10 = 6 * u - 4;
        const double k01 = -12 * u + 6;
        const double k11 = 6 * u - 2;
        return (k00 * y[i] + k01 * y[i + 1]) / (h * h) + (k10 * d[i] + k11 * d[i + 1]) / h;
    }
};

}  // namespace

Potential Potential::from_table(std::vector<double> t, std::vector<double> w) {
    if (t.size() != w.size() || t.size() < 4)
        throw std::invalid_argument("potential table needs >= 4 matching (t, W) rows");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1]))
            throw std::invalid_argument("potential table abscissae must be strictly increasing");
    auto interp = std::make_shared<Pchip>();
    interp->x = std::move(t);
    interp->y = std::move(w);
    interp->d = pchip_slopes(interp->x, interp->y);
    Potential p;
    p.w_ = [interp](double tt) { return interp->eval(tt); };
    p.dw_ = [interp](double tt) { return interp->deriv(tt); };
    p.d2w_ = [interp](double tt) { return interp->deriv2(tt); };
    p.name_ = "table";
    return p;
}

Potential Potential::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential table " + path);
    std::vector<double> t, w;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            t.push_back(a);
            w.push_back(b);
        }
    }
    return from_table(std::move(t), std::move(w));
}

WcondReport check_wcond(const Potential& W, int mesh_size) {
    if (mesh_size < 16) throw std::invalid_argument("check_wcond: mesh size must be >= 16");
    WcondReport r;
    r.endpoint_value = std::max(std::abs(W(-1.0)), std::abs(W(1.0)));
    r.endpoint_slope = std::max(std::abs(W.d(-1.0)), std::abs(W.d(1.0)));
    r.min_endpoint_curvature = std::min(W.d2(-1.0), W.d2(1.0));

    r.min_interior = std::numeric_limits<double>::infinity();
    double min_loc = 0.0;
    r.max_c2_defect = 0.0;
    double c2_loc = 0.0;
    double c2_sum = 0.0;
    int c2_count = 0;
    const double fd = 1.0 / mesh_size;  // step for the W' centered difference
    for (int i = 1; i < mesh_size; ++i) {
        const double t = -1.0 + 2.0 * i / mesh_size;
        const double v = W(t);
        if (!std::isfinite(v) || !std::isfinite(W.d(t)) || !std::isfinite(W.d2(t)))
            throw std::domain_error("check_wcond: evaluator undefined at mesh point");
        if (v < r.min_interior) {
            r.min_interior = v;
            min_loc = t;
        }
        if (t - fd > -1.0 && t + fd < 1.0) {
            const double defect = std::abs((W.d(t + fd) - W.d(t - fd)) / (2.0 * fd) - W.d2(t));
            c2_sum += defect;
            ++c2_count;
            if (defect > r.max_c2_defect) {
                r.max_c2_defect = defect;
                c2_loc = t;
            }
        }
    }
    r.mean_c2_defect = c2_count > 0 ? c2_sum / c2_count : 0.0;

    double curvature_scale = 0.0;
    for (int i = 0; i <= mesh_size; ++i)
        curvature_scale = std::max(curvature_scale, std::abs(W.d2(-1.0 + 2.0 * i / mesh_size)));

    const double tol = 1e-9;
    // Interpolated tables carry O(spacing) endpoint secants and curvature
    // jumps at the knots; the slope and C^2 tolerances scale with the mesh.
    const double slope_tol = std::max(tol, 2.0 * curvature_scale * (2.0 / mesh_size));
    const double c2_tol = std::max(2.0 * fd, 0.05 * curvature_scale);
    struct Cond {
        const char* name;
        double violation;
        double loc;
    };
    const Cond conds[] = {
        {"W(+-1) = 0", r.endpoint_value - tol, 1.0},
        {"W > 0 on (-1,1)", -(r.min_interior), min_loc},
        {"W'(+-1) = 0", r.endpoint_slope - slope_tol, 1.0},
        {"W''(+-1) > 0", tol - r.min_endpoint_curvature, 1.0},
        {"C2 consistency", r.mean_c2_defect - c2_tol, c2_loc},
    };
    r.pass = true;
    r.worst_violation = -std::numeric_limits<double>::infinity();
    for (const auto& c : conds) {
        if (c.violation > 0.0) r.pass = false;
        if (c.violation > r.worst_violation) {
            r.worst_violation = c.violation;
            r.worst_condition = c.name;
            r.worst_location = c.loc;
        }
    }
    return r;
}

bool grow_condition_holds(const Potential& W, double c, int grid_points) {
    // First inequality on the corner square -1 <= r <= t <= -1+c. The slack
    // scales with the terms so degeneracy stays detectable at tiny c.
    for (int i = 0; i <= grid_points; ++i) {
        const double r = -1.0 + c * i / grid_points;
        const double wr = W(r);
        for (int j = i; j <= grid_points; ++j) {
            const double t = -1.0 + c * j / grid_points;
            const double lin = c * (1.0 + r) * (t - r);
            const double quad = c * (t - r) * (t - r);
            const double gap = W(t) - wr - lin - quad;
            const double scale = std::abs(W(t)) + std::abs(wr) + lin + quad;
            if (gap < -1e-13 * scale) return false;
        }
    }
    // Second inequality on the full triangle -1 <= r <= t <= 1. The sup over
    // t of W(r) - W(t) is W(r) - min_{[r,1]} W; scan with a running suffix min.
    std::vector<double> w(grid_points + 1);
    for (int i = 0; i <= grid_points; ++i) w[i] = W(-1.0 + 2.0 * i / grid_points);
    double suffix_min = w[grid_points];
    for (int i = grid_points; i >= 0; --i) {
        suffix_min = std::min(suffix_min, w[i]);
        const double r = -1.0 + 2.0 * i / grid_points;
        if (w[i] - suffix_min > (1.0 + r) / c + 1e-12) return false;
    }
    return true;
}

double find_grow_constant(const Potential& W, int grid_points, int max_ladder) {
    for (int j = 0; j <= max_ladder; ++j) {
        const double c = std::ldexp(1.0, -j);  // 2^{-j}
        if (grow_condition_holds(W, c, grid_points)) return c;
    }
    throw std::domain_error(
        "find_grow_constant: no ladder candidate passes (degenerate potential)");
}

}  // namespace nlac
