#include "nlac/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace nlac {

GridFunction::GridFunction(GridGeometry geo, std::vector<double> values, ExteriorData exterior,
                           double lo, double hi)
    : geo_(std::move(geo)), values_(std::move(values)), ext_(std::move(exterior)), lo_(lo), hi_(hi) {
    if (values_.size() != geo_.cell_count())
        throw std::invalid_argument("GridFunction: value count does not match grid");
    if (!(lo_ <= hi_)) throw std::invalid_argument("GridFunction: empty value range");
    for (double v : values_) {
        if (!std::isfinite(v) || v < lo_ || v > hi_)
            throw std::invalid_argument("GridFunction: value outside declared range");
    }
}

GridFunction GridFunction::constant(const GridGeometry& geo, double v, const ExteriorData& ext) {
    return GridFunction(geo, std::vector<double>(geo.cell_count(), v), ext,
                        std::min(v, ext.lower()), std::max(v, ext.upper()));
}

double GridFunction::operator()(const Vec& x) const {
    if (geo_.contains(x)) return values_[geo_.cell_containing(x)];
    return ext_(x, geo_.n);
}

nlohmann::json GridFunction::to_json() const {
    nlohmann::json box;
    box["center"] = std::vector<double>(geo_.center.begin(), geo_.center.begin() + geo_.n);
    box["half_width"] = geo_.half_width;
    return {{"n", geo_.n},
            {"box", box},
            {"cells_per_axis", geo_.cells_per_axis},
            {"exterior", ext_.descriptor()},
            {"range", {lo_, hi_}},
            {"values", values_}};
}

GridFunction GridFunction::from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    Vec c{0.0, 0.0, 0.0};
    const auto& cc = j.at("box").at("center");
    for (int a = 0; a < n && a < static_cast<int>(cc.size()); ++a) c[a] = cc[a].get<double>();
    GridGeometry geo(n, c, j.at("box").at("half_width").get<double>(),
                     j.at("cells_per_axis").get<int>());
    auto ext = ExteriorData::from_descriptor(j.at("exterior"), n);
    auto values = j.at("values").get<std::vector<double>>();
    const auto& r = j.at("range");
    return GridFunction(geo, std::move(values), std::move(ext), r.at(0).get<double>(),
                        r.at(1).get<double>());
}

void GridFunction::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << to_json().dump(2) << "\n";
}

GridFunction GridFunction::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

GridFunction GridFunction::with_values(std::vector<double> values, double lo, double hi) const {
    return GridFunction(geo_, std::move(values), ext_, lo, hi);
}

GridFunction make_indicator(const CellMask& E, const GridGeometry& geo) {
    if (E.size() != geo.cell_count())
        throw std::invalid_argument("make_indicator: mask size does not match grid");
    std::vector<double> v(geo.cell_count(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (E[i]) v[i] = 1.0;
    return GridFunction(geo, std::move(v), ExteriorData::zero(), 0.0, 1.0);
}

GridFunction make_indicator(const std::vector<std::size_t>& E, const GridGeometry& geo) {
    return make_indicator(CellMask::from_indices(geo.cell_count(), E), geo);
}

GridFunction pointwise_min(const GridFunction& u, const GridFunction& w) {
    if (!(u.geometry() == w.geometry()))
        throw std::invalid_argument("pointwise_min: geometry mismatch");
    auto ext = min_exterior(u.exterior(), w.exterior(), u.geometry().n);
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(u.value(i), w.value(i));
    return GridFunction(u.geometry(), std::move(v), std::move(ext),
                        std::min(u.lower(), w.lower()), std::min(u.upper(), w.upper()));
}

GridFunction difference_to_zero_exterior(const GridFunction& u, const GridFunction& v) {
    if (!(u.geometry() == v.geometry()))
        throw std::invalid_argument("difference: geometry mismatch");
    if (!(u.exterior() == v.exterior()))
        throw std::invalid_argument("difference: exteriors must match for a compactly supported result");
    std::vector<double> d(u.size());
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = u.value(i) - v.value(i);
        lo = std::min(lo, d[i]);
        hi = std::max(hi, d[i]);
    }
    return GridFunction(u.geometry(), std::move(d), ExteriorData::zero(), lo, hi);
}

GridFunction cut_levels(const GridFunction& f, double cut) {
    if (!(cut > 0.0)) throw std::invalid_argument("cut_levels: cut level must be positive");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::clamp(f.value(i), -cut, cut);
    return GridFunction(f.geometry(), std::move(v), f.exterior(),
                        std::clamp(f.lower(), -cut, cut), std::clamp(f.upper(), -cut, cut));
}

GridFunction scale(const GridFunction& f, double factor) {
    if (f.exterior().kind() != ExteriorData::Kind::Zero)
        throw std::invalid_argument("scale: requires zero exterior data");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = factor * f.value(i);
    const double a = factor * f.lower(), b = factor * f.upper();
    return GridFunction(f.geometry(), std::move(v), f.exterior(), std::min(a, b), std::max(a, b));
}

}  // namespace nlac
