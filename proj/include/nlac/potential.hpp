#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nlac {

/// Double-well potential on [-1, 1] with evaluators for W, W' and W''.
/// Either the builtin quartic (1 - t^2)^2 / 4 or a user table with
/// shape-preserving cubic interpolation.
class Potential {
public:
    static Potential quartic();

    /// Two-column table (t, W(t)); interpolated with a monotone
    /// (Fritsch-Carlson) cubic, so W'' is piecewise linear in each interval.
    static Potential from_table(std::vector<double> t, std::vector<double> w);
    static Potential from_csv(const std::string& path);

    /// Arbitrary closed-form potential (used by tests).
    static Potential analytic(std::function<double(double)> w, std::function<double(double)> dw,
                              std::function<double(double)> d2w, std::string name);

    double operator()(double t) const { return w_(t); }
    double d(double t) const { return dw_(t); }
    double d2(double t) const { return d2w_(t); }
    const std::string& name() const { return name_; }

private:
    Potential() = default;
    std::function<double(double)> w_, dw_, d2w_;
    std::string name_;
};

/// Report of the structural double-well conditions checked on a sampled mesh:
/// endpoint zeros, interior positivity, vanishing endpoint slope,
/// nondegenerate endpoint curvature, and C^2 consistency of W' vs W''.
struct WcondReport {
    bool pass = false;
    std::string worst_condition;
    double worst_violation = 0.0;
    double worst_location = 0.0;
    double endpoint_value = 0.0;     // max |W(+-1)|
    double endpoint_slope = 0.0;     // max |W'(+-1)|
    double min_interior = 0.0;       // min W on the open interior mesh
    double min_endpoint_curvature = 0.0;
    double max_c2_defect = 0.0;      // worst |centered difference of W' minus W''|
    double mean_c2_defect = 0.0;     // mesh average; knot jumps of C^1 tables average out
};

WcondReport check_wcond(const Potential& W, int mesh_size);

/// Largest c = 2^{-j} such that both growth inequalities
///   W(t) >= W(r) + c (1+r)(t-r) + c (t-r)^2   for -1 <= r <= t <= -1+c,
///   W(r) - W(t) <= (1+r)/c                    for -1 <= r <= t <= 1
/// hold on a dense (r, t) sample grid. Throws if nothing passes down to
/// 2^{-20} (degenerate well).
double find_grow_constant(const Potential& W, int grid_points = 512, int max_ladder = 20);

/// True if the growth inequalities hold for this exact c on the given grid.
bool grow_condition_holds(const Potential& W, double c, int grid_points);

}  // namespace nlac
