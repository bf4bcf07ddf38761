#pragma once

#include <vector>

#include "nlac/kernel.hpp"

namespace nlac {

/// Dyadic level-set measures of a compactly supported bounded function:
/// a_k = |{|f| > 2^k}|. The sequence is constant (= support measure) for all
/// k <= k_min and zero for all k >= k_max; sums over the full integer range
/// therefore split into a finite part plus an analytic geometric tail.
struct DyadicProfile {
    int k_min = 0;                 // a_k = plateau for all k <= k_min
    int k_max = 0;                 // a_k = 0 for all k >= k_max
    std::vector<double> a;         // a[k - k_min], size k_max - k_min + 1
    double dyadic_base = 4.0;      // T = 2^2 where the Sobolev proof needs it

    double value(int k) const {
        if (k <= k_min) return a.front();
        if (k >= k_max) return 0.0;
        return a[static_cast<std::size_t>(k - k_min)];
    }
    double band(int k) const { return value(k) - value(k + 1); }  // d_k = |D_k|
    double plateau() const { return a.empty() ? 0.0 : a.front(); }
    bool is_zero() const { return plateau() == 0.0; }

    void validate() const;
};

/// Exact level-set measures of |f| (cell counts times cell volume), with the
/// k range extended automatically until the plateau and the terminal zero
/// are both reached.
DyadicProfile level_measures(const GridFunction& f);

/// Sum over k with a_k != 0 of a_{k+1} a_k^{-2s/n} 2^{2k}, including the
/// analytic tail below k_min. This is the lower bound the Gagliardo integral
/// dominates (without its constant).
double dyadic_energy_bound(const DyadicProfile& p, int n, double s);

/// Sum over all k of a_k^{(n-2s)/n} T^k, including the analytic tail.
double dyadic_norm_sum(const DyadicProfile& p, double T, int n, double s);

/// Sum over all k of a_k^{(2n/(n-2s)) * ...} helper for the Sobolev chain:
/// sum of 2^{k q} a_k with arbitrary positive ratio q-power weight.
double dyadic_weighted_sum(const DyadicProfile& p, double log2_weight);

struct SummationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;     // lhs / rhs, 0 when vacuous
    double bound = 0.0;     // T^{n/(n-2s)}
    bool vacuous = false;   // all-zero sequence
    bool pass = false;
};

/// Checks lhs = sum a_k^{(n-2s)/n} T^k <= T^{n/(n-2s)} * sum_{a_k != 0}
/// a_{k+1} a_k^{-2s/n} T^k for a bounded nonnegative decreasing sequence
/// with terminal zeros.
SummationReport summation_lemma(const DyadicProfile& p, double T, int n, double s);

/// Same, for a raw finite sequence a_{k0}, a_{k0+1}, ...; the sequence is
/// continued by its first value below k0 (plateau) and must end in zero.
SummationReport summation_lemma(const std::vector<double>& seq, int k0, double T, int n, double s);

struct ComplementIntegralReport {
    double integral = 0.0;            // int_{complement of E} |x-y|^{-n-2s} dy
    double bound = 0.0;               // c(n,s) |E|^{-2s/n}
    double sharp_constant = 0.0;      // c(n,s) = sigma_{n-1} v_n^{2s/n} / (2s)
    double measure = 0.0;             // |E|
    bool divergent = false;           // x in the interior of the complement
    bool pass = false;
};

/// Sharp constant of the complement lower bound (centered ball is extremal).
double complement_bound_constant(int n, double s);

ComplementIntegralReport complement_integral(const CellMask& E, const Vec& x,
                                             const GridGeometry& geo, const ModelParams& mp);

struct SetSobolevReport {
    double lhs = 0.0;   // int_E int_{CE} kernel
    double rhs = 0.0;   // c(n,s) |E|^{(n-2s)/n}
    double measure = 0.0;
    bool pass = false;
};

/// Sobolev-type inequality for sets: the E x complement interaction
/// dominates c(n,s) |E|^{(n-2s)/n}.
SetSobolevReport set_sobolev(const CellMask& E, const GridGeometry& geo, const ModelParams& mp);

struct Os2Report {
    double gagliardo = 0.0;
    double dyadic_bound = 0.0;
    double constant = 0.0;        // proof constant: the sharp c(n,s)
    double implied_constant = 0.0;  // empirical gagliardo / dyadic_bound
    double slack = 0.0;
    bool pass = false;
};

/// Level-set lower bound for the Gagliardo integral:
/// gagliardo >= c(n,s) * dyadic_energy_bound. The proof constant works out
/// to exactly the sharp complement-bound constant: the 1/4 lost by measuring
/// jumps across two dyadic bands is recovered by the index shift in the
/// final double-counting step.
Os2Report os2_check(const GridFunction& f, const ModelParams& mp);
Os2Report os2_check(const GridFunction& f, const ModelParams& mp, const NonlocalOperator& op);

}  // namespace nlac
