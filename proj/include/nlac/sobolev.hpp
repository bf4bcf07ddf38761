#pragma once

#include <functional>
#include <vector>

#include "nlac/levelset.hpp"

namespace nlac {

/// Every link of the fractional Sobolev inequality chain for one function:
///   ||f||^2_{L^{2n/(n-2s)}}
///     <= 4 (sum_k 2^{2kn/(n-2s)} a_k)^{(n-2s)/n}
///     <= 4 sum_k 2^{2k} a_k^{(n-2s)/n}
///     <= 4 C_sum * dyadic energy bound
///     <= (4 C_sum / c_cmp) * gagliardo
/// with C_sum = 4^{n/(n-2s)} from the summation lemma at T = 4 and c_cmp the
/// sharp complement-bound constant. Chain values are nondecreasing left to
/// right up to the declared slack.
struct SobolevReport {
    double lp_norm_sq = 0.0;
    std::array<double, 5> chain{};      // the five values above, left to right
    std::array<bool, 4> link_ok{};      // one flag per inequality
    std::array<double, 4> link_slack{}; // allowance used per inequality
    double gagliardo = 0.0;
    double proof_constant = 0.0;        // 4 * C_sum / c_cmp
    double empirical_ratio = 0.0;       // lp_norm_sq / gagliardo
    bool pass = false;
};

/// ||f||^2 in L^p with p = 2n/(n-2s); exact for piecewise constants.
double lp_norm_sq(const GridFunction& f, const ModelParams& mp);

SobolevReport sobolev_check(const GridFunction& f, const ModelParams& mp);
SobolevReport sobolev_check(const GridFunction& f, const ModelParams& mp,
                            const NonlocalOperator& op);

/// Empirical sharpness probe: max over generated test functions of
/// lp_norm_sq / gagliardo_sq. Never exceeds the proof constant.
double estimate_best_constant(const std::function<GridFunction(std::size_t)>& family,
                              const ModelParams& mp, std::size_t trials);

}  // namespace nlac
