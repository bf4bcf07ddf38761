#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlac/grid_function.hpp"
#include "nlac/params.hpp"
#include "nlac/potential.hpp"

namespace nlac {

/// Parts of the localized energy E(u; Omega).
struct EnergyBreakdown {
    double interaction_inner = 0.0;  // (1/2) * Omega x Omega
    double interaction_cross = 0.0;  // Omega x complement
    double potential_term = 0.0;     // integral of W(u) over Omega
    double total = 0.0;
};

/// Exterior tail moments at a point x inside the box:
///   m0 = integral over the box complement of |x-y|^{-n-2s} dy,
///   m1 = same with the exterior value g(y) in the integrand,
///   m2 = same with g(y)^2.
struct TailMoments {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
};

/// Introspection record for the quadrature error model.
struct QuadratureErrorModel {
    int near_depth = 0;
    double kappa = 0.0;
    int gauss_order = 0;
    double far_field_radius = 0.0;
    std::string pair_rule;
    std::string exterior_scheme;
    /// Worst-pair relative error bound of the separated-pair rule.
    double separated_rel_bound = 0.0;
    /// Absolute error allowance per face-adjacent cell pair with unit value
    /// jump, left after near-field refinement bottoms out.
    double rim_pair_abs = 0.0;

    nlohmann::json to_json() const;
};

/// All nonlocal quadrature for one (geometry, s, quadrature, exterior)
/// combination: cell-pair kernel weights (cached per absolute index offset,
/// which is exact on a uniform grid), exterior tail moments per cell, and
/// the operations built on them. Read-only after construction; safe to share
/// across threads.
class NonlocalOperator {
public:
    NonlocalOperator(const GridGeometry& geo, double s, const QuadratureSettings& q,
                     const ExteriorData& exterior);

    const GridGeometry& geometry() const { return geo_; }
    double order() const { return s_; }
    const ExteriorData& exterior() const { return ext_; }

    /// Double integral of the kernel over cell_i x cell_j (i != j).
    double pair_weight(std::size_t i, std::size_t j) const;

    /// Integral over cell i of the point tail moments (cell-averaged).
    const TailMoments& cell_tail_moments(std::size_t i) const { return cell_moments_[i]; }

    /// Tail moments at an arbitrary interior point.
    TailMoments point_tail_moments(const Vec& x) const;

    /// Integral of the kernel |x-y|^{-n-2s} over cell j, x outside cell j.
    double point_to_cell_weight(const Vec& x, std::size_t j) const;

    /// Full-space Gagliardo double integral of a compactly supported f.
    double gagliardo_sq(const GridFunction& f) const;

    /// Interaction parts of the localized energy on the cell set omega.
    double energy_inner(const GridFunction& u, const CellMask& omega) const;
    double energy_cross(const GridFunction& u, const CellMask& omega) const;
    double energy_interaction(const GridFunction& u, const CellMask& omega) const;

    EnergyBreakdown total_energy(const GridFunction& u, const CellMask& omega,
                                 const Potential& W) const;

    /// Cell-averaged raw-kernel fractional Laplacian at one cell / all cells.
    double frac_laplacian(const GridFunction& u, std::size_t cell) const;
    std::vector<double> frac_laplacian_all(const GridFunction& u) const;

    /// Gradient of total_energy with respect to the cell values on omega:
    /// h^n (2 * frac_laplacian + W'(u)).
    std::vector<double> energy_gradient(const GridFunction& u, const CellMask& omega,
                                        const Potential& W) const;

    QuadratureErrorModel error_model() const;

    /// Conservative absolute error allowance for gagliardo_sq(f): separated
    /// rule bound plus the rim residual weighted by the actual value jumps
    /// across face-adjacent cells.
    double gagliardo_error_allowance(const GridFunction& f, double computed) const;

private:
    GridGeometry geo_;
    double s_;
    QuadratureSettings q_;
    ExteriorData ext_;
    double p_;  // kernel exponent n + 2s

    std::vector<double> offset_weights_;           // indexed by |delta| flat offset
    std::vector<std::array<int, 3>> multi_index_;  // per-cell multi-index
    std::vector<TailMoments> cell_moments_;

    // Angular quadrature directions and weights for exterior moments (n >= 2).
    std::vector<Vec> ray_dir_;
    std::vector<double> ray_weight_;

    double separated_pair_quad(const Vec& ca, const Vec& cb, double w) const;
    double pair_weight_recursive(const Vec& ca, const Vec& cb, double w, int depth) const;
    double point_cell_recursive(const Vec& x, const Vec& c, double w, int depth) const;
    TailMoments cell_moments_recursive(const Vec& c, double w, int depth) const;
    TailMoments ray_moments(const Vec& x, const Vec& dir, double weight) const;
    double boundary_distance(const Vec& x) const;
    double ray_exit_radius(const Vec& x, const Vec& dir) const;

    void build_offset_table();
    void build_rays();
    void build_cell_moments();

    std::size_t offset_index(std::size_t i, std::size_t j) const;
};

/// One-shot convenience wrappers matching the operation contracts.
double gagliardo_sq(const GridFunction& f, const ModelParams& mp);
double energy_K(const GridFunction& u, const CellMask& omega, const ModelParams& mp);
EnergyBreakdown total_energy(const GridFunction& u, const CellMask& omega, const Potential& W,
                             const ModelParams& mp);
double frac_laplacian(const GridFunction& u, std::size_t cell, const ModelParams& mp);

}  // namespace nlac
