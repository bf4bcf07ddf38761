#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlac/exterior.hpp"
#include "nlac/geometry.hpp"

namespace nlac {

/// Piecewise-constant function on a uniform grid, with analytic exterior
/// data on the complement of the box and a declared value range.
/// Immutable after construction.
class GridFunction {
public:
    GridFunction(GridGeometry geo, std::vector<double> values, ExteriorData exterior,
                 double lo, double hi);

    static GridFunction constant(const GridGeometry& geo, double v, const ExteriorData& ext);

    const GridGeometry& geometry() const { return geo_; }
    const ExteriorData& exterior() const { return ext_; }
    double lower() const { return lo_; }
    double upper() const { return hi_; }

    double value(std::size_t cell) const { return values_[cell]; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    /// Evaluate anywhere: cell value inside the box, exterior data outside.
    double operator()(const Vec& x) const;

    nlohmann::json to_json() const;
    static GridFunction from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static GridFunction load(const std::string& path);

    /// Value-mapped copy (new values must respect [lo, hi]).
    GridFunction with_values(std::vector<double> values, double lo, double hi) const;

private:
    GridGeometry geo_;
    std::vector<double> values_;
    ExteriorData ext_;
    double lo_, hi_;
};

/// Characteristic function of a cell set: 1 on E, 0 elsewhere, zero exterior.
GridFunction make_indicator(const CellMask& E, const GridGeometry& geo);
GridFunction make_indicator(const std::vector<std::size_t>& E, const GridGeometry& geo);

/// Pointwise minimum; exteriors are combined analytically.
GridFunction pointwise_min(const GridFunction& u, const GridFunction& w);

/// u - v for functions on the same grid with identical exterior data; the
/// difference has zero exterior (hence compact support).
GridFunction difference_to_zero_exterior(const GridFunction& u, const GridFunction& v);

/// Clamp values (and range) to [-cut, cut]; support and exterior unchanged.
GridFunction cut_levels(const GridFunction& f, double cut);

/// Scale values by a factor; requires zero exterior.
GridFunction scale(const GridFunction& f, double factor);

}  // namespace nlac
