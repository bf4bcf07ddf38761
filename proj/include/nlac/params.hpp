#pragma once

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace nlac {

/// Quadrature knobs shared by all nonlocal integrals.
struct QuadratureSettings {
    int near_depth = 6;         // recursive pair-subdivision depth for close pairs
    double kappa = 3.0;         // separation factor: midpoint rule beyond kappa * width
    double far_field_radius = 64.0;  // radial truncation for radial exterior tails only
    int angular_points = 256;   // directions for n = 2 exterior moments
    int polar_points = 24;      // polar nodes for n = 3 exterior moments
    int gauss_order = 2;        // per-axis points for separated pair/cell quadrature (1 or 2)

    void validate() const {
        if (near_depth < 0) throw std::invalid_argument("quadrature: near_depth must be >= 0");
        if (!(kappa > 1.0)) throw std::invalid_argument("quadrature: kappa must be > 1");
        if (!(far_field_radius > 0.0))
            throw std::invalid_argument("quadrature: far_field_radius must be > 0");
        if (angular_points < 4) throw std::invalid_argument("quadrature: angular_points must be >= 4");
        if (polar_points < 2) throw std::invalid_argument("quadrature: polar_points must be >= 2");
        if (gauss_order < 1 || gauss_order > 2)
            throw std::invalid_argument("quadrature: gauss_order must be 1 or 2");
    }

    nlohmann::json to_json() const {
        return {{"near_depth", near_depth},
                {"kappa", kappa},
                {"far_field_radius", far_field_radius},
                {"angular_points", angular_points},
                {"polar_points", polar_points},
                {"gauss_order", gauss_order}};
    }
};

/// Global model parameters: dimension, fractional order, quadrature.
struct ModelParams {
    int n = 1;
    double s = 0.25;
    QuadratureSettings quadrature{};

    void validate() const {
        if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("ModelParams: s must be in (0,1)");
        if (!(n > 2.0 * s))
            throw std::invalid_argument("ModelParams: n > 2s required (exponent 2n/(n-2s))");
        quadrature.validate();
    }

    /// Density-estimate operations additionally need s < 1/2 (piecewise
    /// constants have finite interaction energy only in that range).
    void require_density_range() const {
        validate();
        if (!(s < 0.5))
            throw std::invalid_argument("density operations require s in (0, 1/2)");
    }

    double sobolev_exponent() const { return 2.0 * n / (n - 2.0 * s); }
};

/// Level thresholds used by the density machinery.
struct Thresholds {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double c_grow = 0.5;

    double theta_low() const { return std::min(std::min(theta1, theta2), -1.0 + c_grow); }
    double theta_high() const { return std::max(std::max(theta1, theta2), -1.0 + c_grow); }

    void validate() const {
        if (!(theta1 > -1.0 && theta1 < 1.0 && theta2 > -1.0 && theta2 < 1.0))
            throw std::invalid_argument("Thresholds: theta1, theta2 must be in (-1,1)");
        if (!(c_grow > 0.0 && c_grow < 2.0))
            throw std::invalid_argument("Thresholds: c_grow must be in (0,2)");
        if (!(theta_low() > -1.0 && theta_high() < 1.0))
            throw std::invalid_argument("Thresholds: derived levels must stay in (-1,1)");
    }
};

}  // namespace nlac
