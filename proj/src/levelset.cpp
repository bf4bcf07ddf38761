#include "nlac/levelset.hpp"

#include <algorithm>
#include <cmath>

namespace nlac {

void DyadicProfile::validate() const {
    if (a.empty()) throw std::invalid_argument("DyadicProfile: empty sequence");
    if (k_max - k_min + 1 != static_cast<int>(a.size()))
        throw std::invalid_argument("DyadicProfile: k range does not match sequence length");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] >= 0.0) || !std::isfinite(a[i]))
            throw std::invalid_argument("DyadicProfile: entries must be finite and nonnegative");
        if (i > 0 && a[i] > a[i - 1] + 1e-15 * a[i - 1])
            throw std::invalid_argument("DyadicProfile: sequence must be nonincreasing");
    }
    if (a.back() != 0.0)
        throw std::invalid_argument("DyadicProfile: sequence must reach zero (bounded support)");
}

DyadicProfile level_measures(const GridFunction& f) {
    if (f.exterior().kind() != ExteriorData::Kind::Zero)
        throw std::invalid_argument("level_measures: compact support (zero exterior) required");
    const double vol = f.geometry().cell_volume();

    double max_abs = 0.0;
    double min_nonzero = std::numeric_limits<double>::infinity();
    std::size_t support = 0;
    for (const double v : f.values()) {
        const double av = std::abs(v);
        if (!std::isfinite(av)) throw std::invalid_argument("level_measures: unbounded value");
        if (av > 0.0) {
            ++support;
            max_abs = std::max(max_abs, av);
            min_nonzero = std::min(min_nonzero, av);
        }
    }

    DyadicProfile p;
    if (support == 0) {
        p.k_min = 0;
        p.k_max = 0;
        p.a = {0.0};
        return p;
    }

    // 2^k < min |f| for all k <= k_min gives the plateau; a_k = 0 once
    // 2^k >= max |f|.
    int k_min = static_cast<int>(std::floor(std::log2(min_nonzero))) - 1;
    while (std::ldexp(1.0, k_min) >= min_nonzero) --k_min;
    int k_max = static_cast<int>(std::ceil(std::log2(max_abs)));
    while (std::ldexp(1.0, k_max) < max_abs) ++k_max;

    p.k_min = k_min;
    p.k_max = k_max;
    p.a.assign(static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    for (int k = k_min; k <= k_max; ++k) {
        const double level = std::ldexp(1.0, k);
        std::size_t count = 0;
        for (const double v : f.values())
            if (std::abs(v) > level) ++count;
        p.a[static_cast<std::size_t>(k - k_min)] = vol * static_cast<double>(count);
    }
    p.validate();
    return p;
}

double dyadic_energy_bound(const DyadicProfile& p, int n, double s) {
    if (p.is_zero()) return 0.0;
    const double theta = 2.0 * s / n;
    double sum = 0.0;
    // Finite bands; a_k != 0 only for k < k_max.
    for (int k = p.k_min; k < p.k_max; ++k) {
        const double ak = p.value(k);
        if (ak == 0.0) continue;
        sum += p.value(k + 1) * std::pow(ak, -theta) * std::ldexp(1.0, 2 * k);
    }
    // Analytic tail k < k_min: a_{k+1} = a_k = plateau, weight 4^k.
    const double plateau_term = std::pow(p.plateau(), 1.0 - theta);
    sum += plateau_term * std::ldexp(1.0, 2 * (p.k_min - 1)) * (4.0 / 3.0);
    return sum;
}

double dyadic_norm_sum(const DyadicProfile& p, double T, int n, double s) {
    if (p.is_zero()) return 0.0;
    const double theta = (n - 2.0 * s) / n;
    double sum = 0.0;
    for (int k = p.k_min; k < p.k_max; ++k)
        sum += std::pow(p.value(k), theta) * std::pow(T, k);
    // Tail k < k_min: plateau^theta * T^k sums to T^{k_min-1} * T/(T-1).
    sum += std::pow(p.plateau(), theta) * std::pow(T, p.k_min - 1) * T / (T - 1.0);
    return sum;
}

double dyadic_weighted_sum(const DyadicProfile& p, double log2_weight) {
    if (p.is_zero()) return 0.0;
    const double T = std::exp2(log2_weight);
    double sum = 0.0;
    for (int k = p.k_min; k < p.k_max; ++k)
        sum += p.value(k) * std::pow(T, k);
    sum += p.plateau() * std::pow(T, p.k_min - 1) * T / (T - 1.0);
    return sum;
}

SummationReport summation_lemma(const DyadicProfile& p, double T, int n, double s) {
    if (!(T > 1.0)) throw std::invalid_argument("summation_lemma: T must be > 1");
    p.validate();
    SummationReport r;
    r.bound = std::pow(T, static_cast<double>(n) / (n - 2.0 * s));
    if (p.is_zero()) {
        r.vacuous = true;
        r.pass = true;
        return r;
    }
    const double theta = (n - 2.0 * s) / n;
    const double itheta = 2.0 * s / n;
    r.lhs = dyadic_norm_sum(p, T, n, s);
    double rhs = 0.0;
    for (int k = p.k_min; k < p.k_max; ++k) {
        const double ak = p.value(k);
        if (ak == 0.0) continue;
        rhs += p.value(k + 1) * std::pow(ak, -itheta) * std::pow(T, k);
    }
    rhs += std::pow(p.plateau(), theta) * std::pow(T, p.k_min - 1) * T / (T - 1.0);
    r.rhs = rhs;
    r.ratio = r.lhs / r.rhs;
    r.pass = r.lhs <= r.bound * r.rhs * (1.0 + 1e-12);
    return r;
}

SummationReport summation_lemma(const std::vector<double>& seq, int k0, double T, int n, double s) {
    DyadicProfile p;
    p.k_min = k0;
    p.k_max = k0 + static_cast<int>(seq.size()) - 1;
    p.a = seq;
    return summation_lemma(p, T, n, s);
}

double complement_bound_constant(int n, double s) {
    const double sigma = unit_sphere_measure(n);
    return sigma * std::pow(unit_ball_volume(n), 2.0 * s / n) / (2.0 * s);
}

ComplementIntegralReport complement_integral(const CellMask& E, const Vec& x,
                                             const GridGeometry& geo, const ModelParams& mp) {
    mp.validate();
    if (E.size() != geo.cell_count())
        throw std::invalid_argument("complement_integral: mask size mismatch");
    ComplementIntegralReport r;
    r.measure = static_cast<double>(E.count()) * geo.cell_volume();
    if (r.measure <= 0.0) throw std::invalid_argument("complement_integral: |E| must be > 0");
    r.sharp_constant = complement_bound_constant(geo.n, mp.s);
    r.bound = r.sharp_constant * std::pow(r.measure, -2.0 * mp.s / geo.n);

    // If x lies in the interior of the complement the integral diverges
    // (the kernel is not locally integrable); the bound holds trivially.
    if (!geo.contains(x) || !E[geo.cell_containing(x)]) {
        r.divergent = true;
        r.integral = std::numeric_limits<double>::infinity();
        r.pass = true;
        return r;
    }

    NonlocalOperator op(geo, mp.s, mp.quadrature, ExteriorData::zero());
    double sum = 0.0;
    for (std::size_t j = 0; j < E.size(); ++j)
        if (!E[j]) sum += op.point_to_cell_weight(x, j);
    sum += op.point_tail_moments(x).m0;
    r.integral = sum;
    const double slack = op.error_model().separated_rel_bound;
    r.pass = r.integral >= r.bound * (1.0 - slack - 1e-9);
    return r;
}

SetSobolevReport set_sobolev(const CellMask& E, const GridGeometry& geo, const ModelParams& mp) {
    mp.validate();
    SetSobolevReport r;
    r.measure = static_cast<double>(E.count()) * geo.cell_volume();
    if (r.measure <= 0.0) throw std::invalid_argument("set_sobolev: |E| must be > 0");
    NonlocalOperator op(geo, mp.s, mp.quadrature, ExteriorData::zero());
    const GridFunction chi = make_indicator(E, geo);
    // E x complement interaction = K(chi; E) with zero exterior: the inner
    // part vanishes (chi constant on E) and the cross part is exactly the
    // E x CE double integral.
    r.lhs = op.energy_cross(chi, E);
    r.rhs = complement_bound_constant(geo.n, mp.s) *
            std::pow(r.measure, (geo.n - 2.0 * mp.s) / geo.n);
    const double slack = op.error_model().separated_rel_bound;
    r.pass = r.lhs >= r.rhs * (1.0 - slack - 1e-9);
    return r;
}

Os2Report os2_check(const GridFunction& f, const ModelParams& mp, const NonlocalOperator& op) {
    Os2Report r;
    const DyadicProfile p = level_measures(f);
    r.gagliardo = op.gagliardo_sq(f);
    r.dyadic_bound = dyadic_energy_bound(p, mp.n, mp.s);
    r.constant = complement_bound_constant(mp.n, mp.s);
    r.implied_constant = r.dyadic_bound > 0.0 ? r.gagliardo / r.dyadic_bound : 0.0;
    r.slack = op.gagliardo_error_allowance(f, r.gagliardo) + 1e-9 * std::abs(r.gagliardo);
    r.pass = r.gagliardo + r.slack >= r.constant * r.dyadic_bound;
    return r;
}

Os2Report os2_check(const GridFunction& f, const ModelParams& mp) {
    mp.validate();
    NonlocalOperator op(f.geometry(), mp.s, mp.quadrature, f.exterior());
    return os2_check(f, mp, op);
}

}  // namespace nlac
