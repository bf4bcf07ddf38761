#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "nlac/geometry.hpp"

namespace nlac {

/// Analytic values prescribed on the complement of the grid box. The
/// complement is unbounded, so exterior data is always closed-form and
/// carries a declared bounded range plus enough structure for the tail
/// integrals of the kernel module.
class ExteriorData {
public:
    enum class Kind { Zero, Constant, HalfSpace, Radial };

    static ExteriorData zero();
    static ExteriorData constant(double v);
    /// +1 where x * e > 0, -1 elsewhere, for the unit direction e.
    static ExteriorData half_space(const Vec& direction, int n);
    /// Value as a function of |x|, with a declared limit as |x| -> infinity.
    static ExteriorData radial(std::function<double(double)> profile, double limit,
                               std::string name);

    Kind kind() const { return kind_; }
    double constant_value() const { return value_; }
    const Vec& direction() const { return direction_; }
    double limit_at_infinity() const;
    double radial_value(double r) const { return profile_(r); }

    double operator()(const Vec& x, int n) const;

    double lower() const { return lo_; }
    double upper() const { return hi_; }

    bool operator==(const ExteriorData& o) const;

    nlohmann::json descriptor() const;
    static ExteriorData from_descriptor(const nlohmann::json& j, int n);

private:
    ExteriorData() = default;
    Kind kind_ = Kind::Zero;
    double value_ = 0.0;
    Vec direction_{1.0, 0.0, 0.0};
    std::function<double(double)> profile_;
    double limit_ = 0.0;
    std::string name_;
    double lo_ = 0.0, hi_ = 0.0;
};

/// Pointwise minimum of two exterior descriptors, when the result is
/// representable in the same closed-form family. Throws otherwise.
ExteriorData min_exterior(const ExteriorData& a, const ExteriorData& b, int n);

}  // namespace nlac
