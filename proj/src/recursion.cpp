#include "nlac/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlac {

GrowthFunction GrowthFunction::power(double a, double exponent) {
    if (!(a > 0.0)) throw std::invalid_argument("growth power law: coefficient must be > 0");
    GrowthFunction g;
    g.form_ = Power{a, exponent};
    return g;
}

GrowthFunction GrowthFunction::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("growth constant: value must be > 0");
    GrowthFunction g;
    g.form_ = Constant{c};
    return g;
}

GrowthFunction GrowthFunction::piecewise(std::vector<double> breaks, std::vector<double> a,
                                         std::vector<double> e) {
    if (breaks.size() != a.size() || a.size() != e.size() || a.empty())
        throw std::invalid_argument("growth piecewise: matching nonempty segments required");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!(breaks[i] < breaks[i + 1]))
            throw std::invalid_argument("growth piecewise: breaks must increase");
    GrowthFunction g;
    g.form_ = Piecewise{std::move(breaks), std::move(a), std::move(e)};
    return g;
}

GrowthFunction GrowthFunction::table(std::vector<double> r, std::vector<double> v) {
    if (r.size() != v.size() || r.size() < 2)
        throw std::invalid_argument("growth table: need >= 2 matching rows");
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (!(r[i] < r[i + 1])) throw std::invalid_argument("growth table: radii must increase");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw std::invalid_argument("growth table: values must be positive");
        if (i > 0 && v[i] < v[i - 1])
            throw std::invalid_argument("growth table: values must be nondecreasing");
    }
    GrowthFunction g;
    g.form_ = Table{std::move(r), std::move(v)};
    return g;
}

GrowthFunction GrowthFunction::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power")
        return power(j.at("a").get<double>(), j.at("exponent").get<double>());
    if (kind == "constant") return constant(j.at("value").get<double>());
    if (kind == "piecewise")
        return piecewise(j.at("breaks").get<std::vector<double>>(),
                         j.at("a").get<std::vector<double>>(),
                         j.at("e").get<std::vector<double>>());
    if (kind == "table")
        return table(j.at("r").get<std::vector<double>>(), j.at("v").get<std::vector<double>>());
    throw std::invalid_argument("unknown growth function kind: " + kind);
}

double GrowthFunction::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("growth function: r must be > 0");
    if (const auto* p = std::get_if<Power>(&form_)) return p->a * std::pow(r, p->e);
    if (const auto* c = std::get_if<Constant>(&form_)) return c->c;
    if (const auto* pw = std::get_if<Piecewise>(&form_)) {
        std::size_t seg = 0;
        while (seg + 1 < pw->breaks.size() && r >= pw->breaks[seg + 1]) ++seg;
        return pw->a[seg] * std::pow(r, pw->e[seg]);
    }
    const auto& t = std::get<Table>(form_);
    if (r < t.r.front()) return t.v.front();
    const auto it = std::upper_bound(t.r.begin(), t.r.end(), r);
    return t.v[static_cast<std::size_t>(it - t.r.begin()) - 1];
}

std::string GrowthFunction::describe() const {
    if (const auto* p = std::get_if<Power>(&form_))
        return "power(a=" + std::to_string(p->a) + ", e=" + std::to_string(p->e) + ")";
    if (const auto* c = std::get_if<Constant>(&form_))
        return "constant(" + std::to_string(c->c) + ")";
    if (std::holds_alternative<Piecewise>(form_)) return "piecewise power";
    return "table";
}

double growth_alpha(double value, double r) {
    if (!(r > 1.0)) throw std::domain_error("growth_alpha: needs r > 1");
    return std::min(1.0, std::log(value) / std::log(r));
}

HypothesisReport check_hypothesis(const GrowthFunction& V, const RecursionParams& p,
                                  const std::vector<double>& grid) {
    p.validate();
    if (grid.empty()) throw std::invalid_argument("check_hypothesis: empty grid");
    HypothesisReport rep;
    rep.r_lo = grid.front();
    rep.r_hi = grid.back();
    if (grid.front() < p.R_o - 1e-12)
        throw std::invalid_argument("check_hypothesis: grid must start at or above R_o");

    if (V(p.R_o) < p.mu) {
        rep.pass = false;
        rep.first_violation_r = p.R_o;
        rep.which = "V(R_o) >= mu";
        return rep;
    }
    const double expo = (p.nu - p.sigma) / p.nu;
    for (const double r : grid) {
        const double value = V(r);
        if (!(value > 0.0)) throw std::invalid_argument("check_hypothesis: V must be positive");
        ++rep.checked;
        const double lhs = std::pow(r, p.sigma) * growth_alpha(value, r) * std::pow(value, expo);
        const double rhs = p.C * V(p.gamma * r);
        if (lhs > rhs * (1.0 + 1e-12)) {
            rep.pass = false;
            rep.first_violation_r = r;
            rep.which = "r^sigma alpha(r) V(r)^{(nu-sigma)/nu} <= C V(gamma r)";
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

PropagationChain propagate_lower_bound(const GrowthFunction& V, const RecursionParams& p,
                                       int steps) {
    p.validate();
    if (steps < 2) throw std::invalid_argument("propagate_lower_bound: need >= 2 steps");

    PropagationChain chain;
    const double expo = (p.nu - p.sigma) / p.nu;
    double r = p.R_o;
    double L = p.mu;
    if (V(p.R_o) < p.mu) {
        chain.hypothesis_failed = true;
        chain.failure_r = p.R_o;
        return chain;
    }
    for (int j = 0; j < steps; ++j) {
        chain.r.push_back(r);
        chain.L.push_back(L);
        // The bootstrap needs the doubling-type hypothesis at r_j.
        const double vr = V(r);
        const double lhs = std::pow(r, p.sigma) * growth_alpha(vr, r) * std::pow(vr, expo);
        if (lhs > p.C * V(p.gamma * r) * (1.0 + 1e-12)) {
            chain.hypothesis_failed = true;
            chain.failure_r = r;
            return chain;
        }
        const double alpha = growth_alpha(L, r);
        if (!(alpha > 0.0)) {
            chain.collapsed = true;
            break;
        }
        L = std::pow(r, p.sigma) * alpha * std::pow(L, expo) / p.C;
        r *= p.gamma;
    }
    // Fit the exponent over the last half of the chain.
    const std::size_t m = chain.r.size();
    const std::size_t lo = m / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = lo; i < m; ++i) {
        if (!(chain.L[i] > 0.0)) continue;
        const double x = std::log(chain.r[i]), y = std::log(chain.L[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) chain.fitted_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return chain;
}

}  // namespace nlac
