#pragma once

#include <vector>

#include "nlac/kernel.hpp"

namespace nlac {

/// Radially symmetric barrier candidate: w = 1 outside B_R and
/// 1 + w(x) = min(ceiling, C_b (R + 1 - |x|)^{-2s}) inside.
struct BarrierParams {
    double R = 16.0;        // barrier radius
    double tau = 0.125;     // slack coefficient of the supersolution bound
    double C_b = 2.0;       // profile constant, > 1
    double ceiling = 2.0;   // clamp on 1 + w (keeps w <= 1)

    void validate() const {
        if (!(R >= 1.0)) throw std::invalid_argument("barrier: R must be >= 1");
        if (!(tau > 0.0)) throw std::invalid_argument("barrier: tau must be > 0");
        if (!(C_b > 1.0)) throw std::invalid_argument("barrier: C_b must be > 1");
        if (!(ceiling > 0.0 && ceiling <= 2.0))
            throw std::invalid_argument("barrier: ceiling must be in (0, 2]");
    }
};

/// Default profile constant from the center-cell balance: the kernel mass
/// beyond B_R seen from the center forces tau * C_b >= sigma_{n-1}/s, up to
/// lower-order inside contributions. Returned with a 25% margin.
double default_profile_constant(int n, double s, double tau);

/// Builds the clamped-power barrier on the grid; B_R must fit in the box.
/// Exterior data is the constant 1.
GridFunction build_barrier(const BarrierParams& p, const GridGeometry& geo, double s);

struct BarrierReport {
    std::vector<double> cell_radius;   // |center| of each cell in B_R
    std::vector<double> margin;        // -(-Delta)^s w - tau (1 + w) per cell
    double worst_margin = 0.0;         // max over B_R
    bool supersolution_ok = false;     // worst <= tolerance
    double comparability_C = 0.0;      // smallest C with the two-sided power bound
    double clamped_fraction = 0.0;     // cells at the ceiling
    bool degenerate = false;           // w = 1 on all of B_R
};

/// Checks the supersolution bound -(-Delta)^s w <= tau (1 + w) on B_R and the
/// two-sided comparability of 1 + w with (R + 1 - |x|)^{-2s}.
BarrierReport verify_barrier(const GridFunction& w, const BarrierParams& p, const ModelParams& mp,
                             double tolerance = 1e-8);

}  // namespace nlac
