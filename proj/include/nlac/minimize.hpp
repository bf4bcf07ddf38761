#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlac/kernel.hpp"

namespace nlac {

struct MinimizeOptions {
    int max_iters = 20000;
    double tolerance = 1e-6;      // on the projected Euler-Lagrange residual
    double armijo = 1e-4;
    double step_init = 1.0;
    double step_shrink = 0.5;
    double step_grow = 1.25;
    double min_step = 1e-18;
    int checkpoint_every = 0;     // 0 = no checkpointing
    std::string checkpoint_path;
    bool resume = false;
    /// Initial iterate: natural extension of the exterior data unless given.
    std::optional<std::vector<double>> init;

    void validate() const {
        if (max_iters < 1) throw std::invalid_argument("minimize: max_iters must be >= 1");
        if (!(tolerance > 0.0)) throw std::invalid_argument("minimize: tolerance must be > 0");
    }
};

struct MinimizeReport {
    GridFunction u;
    std::vector<double> energy_trace;  // nonincreasing by construction
    double final_projected_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Line search bottomed out at machine precision with no descent left;
    /// reported as converged-at-machine-precision with the residual as slack.
    bool stalled = false;
};

/// Euler-Lagrange residual r = 2 (-Delta)^s u + W'(u) per cell (the factor 2
/// makes r exactly the energy gradient divided by h^n), plus its projection
/// onto the feasible directions at the [-1, 1] bounds.
struct ElResidual {
    std::vector<double> raw;
    std::vector<double> projected;
    double max_abs_projected = 0.0;
};

ElResidual el_residual(const GridFunction& u, const Potential& W, const NonlocalOperator& op);
ElResidual el_residual(const GridFunction& u, const Potential& W, const ModelParams& mp);

/// Projected gradient descent with Armijo backtracking for E(.; omega) over
/// grid functions with values in [-1, 1] and the prescribed exterior data.
/// Cells outside omega keep their initial values.
MinimizeReport minimize(const ModelParams& mp, const GridGeometry& geo, const CellMask& omega,
                        const ExteriorData& exterior, const Potential& W,
                        const MinimizeOptions& opts);

/// Natural extension of the exterior data onto the grid (initial iterate).
std::vector<double> exterior_extension(const GridGeometry& geo, const ExteriorData& ext);

}  // namespace nlac
