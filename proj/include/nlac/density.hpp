#pragma once

#include <optional>
#include <vector>

#include "nlac/minimize.hpp"

namespace nlac {

/// Occupied volume V(R) = |{u > theta} cap B_R| per radius (cell centers).
std::vector<double> volume_profile(const GridFunction& u, double theta,
                                   const std::vector<double>& radii);

/// Defect integral A(R) = c_grow * int_{B_R cap {w < u <= theta_low}} (u-w)^2.
std::vector<double> defect_profile(const GridFunction& u, const GridFunction& w,
                                   double theta_low, double c_grow,
                                   const std::vector<double>& radii);

struct WeightedGrowthReport {
    std::vector<double> radii;   // evaluation radii
    std::vector<double> rhs;     // Stieltjes sum of (R+1-t)^{-2s} dV(t)
    std::vector<double> lhs_shape;  // V(R-K)^{(n-2s)/n}
    std::vector<double> ratio;   // rhs / lhs_shape where defined
    double empirical_c3 = 0.0;   // min over defined ratios
    std::size_t defined = 0;
};

/// Weighted growth inequality: c3 V(R-K)^{(n-2s)/n} <= int_0^R (R+1-t)^{-2s} dV.
/// The right side is a midpoint Stieltjes sum over the V table; ratios are
/// reported at eval_radii (default: every table radius).
WeightedGrowthReport check_la8(const std::vector<double>& radii, const std::vector<double>& V,
                               double s, int n, double K,
                               const std::vector<double>& eval_radii = {});

struct DoublingReport {
    std::vector<double> r;       // radii with both r and 2r in the table
    std::vector<double> ratio;   // r^{2s} V(r)^{(n-2s)/n} / V(2r)
    std::vector<bool> flagged;   // V(2r) = 0
    double empirical_C = 0.0;    // max over defined ratios
    double median = 0.0;
};

/// Doubling inequality r^{2s} V(r)^{(n-2s)/n} <= C V(2r) across table pairs.
DoublingReport check_doubling(const std::vector<double>& radii, const std::vector<double>& V,
                              double s, int n);

struct DensityTheoremReport {
    bool hypothesis_ok = false;   // u > theta1 at the origin cell
    double origin_value = 0.0;
    std::vector<double> radii;
    std::vector<double> ratio;    // V(R) / R^n at threshold theta2
    double min_ratio = 0.0;       // over radii >= r_min
    double empirical_R_bar = 0.0; // largest radius with ratio below the floor
};

DensityTheoremReport density_theorem_check(const GridFunction& u, double theta1, double theta2,
                                           const std::vector<double>& radii, double r_min,
                                           double ratio_floor);

struct GrowthFitReport {
    std::vector<double> radii;
    std::vector<double> energy;
    double exponent = 0.0;   // least-squares slope of log E vs log R
    double residual = 0.0;   // rms residual of the fit
    bool degenerate = false; // some energy vanished; fit rejected
    std::vector<MinimizeReport> runs;
};

/// Minimizes on [-R, R]^n with half-space exterior data for each radius at
/// fixed cell width h, evaluates E(u; B_R), and fits the growth exponent.
GrowthFitReport energy_growth_check(const ModelParams& mp, const Potential& W,
                                    const std::vector<double>& radii, double h,
                                    const MinimizeOptions& opts);

/// Bundled per-run tables of the density pipeline.
struct DensityTables {
    std::vector<double> radii;
    std::vector<double> V;
    std::vector<double> A;   // empty when no barrier was supplied
    double K = 0.0;
    double empirical_c3 = 0.0;
    double empirical_C = 0.0;
    double min_volume_ratio = 0.0;
    double fitted_exponent = 0.0;
};

}  // namespace nlac
