#include "nlac/geometry.hpp"

#include <cmath>
#include <numbers>

namespace nlac {

double unit_sphere_measure(int n) {
    if (n < 1) throw std::invalid_argument("unit_sphere_measure: n must be >= 1");
    // 2 pi^{n/2} / Gamma(n/2); equals 2, 2pi, 4pi for n = 1, 2, 3.
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) { return unit_sphere_measure(n) / n; }

GridGeometry::GridGeometry(int dim, const Vec& c, double hw, int m)
    : n(dim), center(c), half_width(hw), cells_per_axis(m) {
    if (n < 1 || n > 3) throw std::invalid_argument("GridGeometry: n must be in 1..3");
    if (!(half_width > 0.0)) throw std::invalid_argument("GridGeometry: half_width must be > 0");
    if (m < 1) throw std::invalid_argument("GridGeometry: cells_per_axis must be >= 1");
    for (int a = n; a < 3; ++a) center[a] = 0.0;
}

double GridGeometry::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < n; ++a) v *= h();
    return v;
}

std::size_t GridGeometry::cell_count() const {
    std::size_t c = 1;
    for (int a = 0; a < n; ++a) c *= static_cast<std::size_t>(cells_per_axis);
    return c;
}

std::array<int, 3> GridGeometry::multi_index(std::size_t flat) const {
    std::array<int, 3> mi{0, 0, 0};
    const auto m = static_cast<std::size_t>(cells_per_axis);
    // Row-major: the last axis varies fastest.
    for (int a = n - 1; a >= 0; --a) {
        mi[a] = static_cast<int>(flat % m);
        flat /= m;
    }
    return mi;
}

std::size_t GridGeometry::flat_index(const std::array<int, 3>& mi) const {
    const auto m = static_cast<std::size_t>(cells_per_axis);
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) {
        if (mi[a] < 0 || mi[a] >= cells_per_axis)
            throw std::out_of_range("GridGeometry::flat_index: index out of grid bounds");
        flat = flat * m + static_cast<std::size_t>(mi[a]);
    }
    return flat;
}

Vec GridGeometry::cell_center(std::size_t flat) const {
    const auto mi = multi_index(flat);
    Vec x{0.0, 0.0, 0.0};
    const double hh = h();
    for (int a = 0; a < n; ++a)
        x[a] = center[a] + (mi[a] + 0.5 - 0.5 * cells_per_axis) * hh;
    return x;
}

std::size_t GridGeometry::cell_containing(const Vec& x) const {
    std::array<int, 3> mi{0, 0, 0};
    const double hh = h();
    for (int a = 0; a < n; ++a) {
        const double t = (x[a] - axis_lo(a)) / hh;
        int i = static_cast<int>(std::floor(t));
        if (i == cells_per_axis && x[a] <= axis_hi(a)) i = cells_per_axis - 1;
        if (i < 0 || i >= cells_per_axis)
            throw std::out_of_range("GridGeometry::cell_containing: point outside box");
        mi[a] = i;
    }
    return flat_index(mi);
}

bool GridGeometry::contains(const Vec& x) const {
    for (int a = 0; a < n; ++a)
        if (x[a] < axis_lo(a) || x[a] > axis_hi(a)) return false;
    return true;
}

CellMask CellMask::sub_box(const GridGeometry& g, const std::array<int, 3>& lo,
                           const std::array<int, 3>& hi) {
    for (int a = 0; a < g.n; ++a)
        if (lo[a] < 0 || hi[a] >= g.cells_per_axis || lo[a] > hi[a])
            throw std::invalid_argument("CellMask::sub_box: invalid index range");
    CellMask m(g.cell_count(), false);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto mi = g.multi_index(i);
        bool in = true;
        for (int a = 0; a < g.n; ++a) in = in && mi[a] >= lo[a] && mi[a] <= hi[a];
        if (in) m.set(i);
    }
    return m;
}

CellMask CellMask::ball(const GridGeometry& g, const Vec& c, double radius) {
    CellMask m(g.cell_count(), false);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (distance(g.cell_center(i), c, g.n) < radius) m.set(i);
    return m;
}

CellMask CellMask::from_indices(std::size_t cells, const std::vector<std::size_t>& idx) {
    CellMask m(cells, false);
    for (auto i : idx) {
        if (i >= cells) throw std::out_of_range("CellMask::from_indices: index out of grid bounds");
        m.set(i);
    }
    return m;
}

std::size_t CellMask::count() const {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
}

std::vector<std::size_t> CellMask::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

}  // namespace nlac
