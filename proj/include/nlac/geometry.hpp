#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nlac {

/// Point in R^n, n <= 3. Unused trailing components are zero.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

inline double distance(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Surface measure of the unit sphere S^{n-1} (counting measure 2 for n = 1).
double unit_sphere_measure(int n);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Uniform cubic grid over an axis-aligned box. All cells are congruent
/// cubes of width h; cell centers are exactly reproducible from the index.
struct GridGeometry {
    int n = 1;                    // spatial dimension, 1..3
    Vec center{0.0, 0.0, 0.0};    // box center
    double half_width = 1.0;      // per-axis half-width
    int cells_per_axis = 1;

    GridGeometry() = default;
    GridGeometry(int dim, const Vec& c, double hw, int m);

    double h() const { return 2.0 * half_width / cells_per_axis; }
    double cell_volume() const;
    std::size_t cell_count() const;

    double axis_lo(int axis) const { return center[axis] - half_width; }
    double axis_hi(int axis) const { return center[axis] + half_width; }

    std::array<int, 3> multi_index(std::size_t flat) const;
    std::size_t flat_index(const std::array<int, 3>& mi) const;

    /// Center of cell i along each axis: center + (idx + 1/2 - m/2) * h.
    Vec cell_center(std::size_t flat) const;

    /// Flat index of the cell whose half-open box [lo, hi) contains x.
    /// Throws if x is outside the box.
    std::size_t cell_containing(const Vec& x) const;

    bool contains(const Vec& x) const;

    bool operator==(const GridGeometry& o) const {
        return n == o.n && center == o.center && half_width == o.half_width &&
               cells_per_axis == o.cells_per_axis;
    }
};

/// Subset of grid cells (minimization domain, level set, ...).
class CellMask {
public:
    CellMask() = default;
    explicit CellMask(std::size_t cells, bool value = false)
        : bits_(cells, value ? 1 : 0) {}

    static CellMask all(const GridGeometry& g) { return CellMask(g.cell_count(), true); }

    /// Cells with multi-index in [lo, hi] per axis (inclusive).
    static CellMask sub_box(const GridGeometry& g, const std::array<int, 3>& lo,
                            const std::array<int, 3>& hi);

    /// Cells whose center lies in the open ball B_R(c).
    static CellMask ball(const GridGeometry& g, const Vec& c, double radius);

    static CellMask from_indices(std::size_t cells, const std::vector<std::size_t>& idx);

    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool v = true) { bits_[i] = v ? 1 : 0; }
    std::size_t size() const { return bits_.size(); }
    std::size_t count() const;
    std::vector<std::size_t> indices() const;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace nlac
