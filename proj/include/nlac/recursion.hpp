#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nlac {

/// Parameters of the inductive growth lemma.
struct RecursionParams {
    double sigma = 0.5;
    double mu = 1.0;
    double nu = 1.0;
    double gamma = 2.0;
    double R_o = 2.0;
    double C = 2.0;

    void validate() const {
        if (!(sigma > 0.0)) throw std::invalid_argument("recursion: sigma must be > 0");
        if (!(mu > 0.0)) throw std::invalid_argument("recursion: mu must be > 0");
        if (!(nu > sigma)) throw std::invalid_argument("recursion: nu must exceed sigma");
        if (!(gamma > 1.0)) throw std::invalid_argument("recursion: gamma must be > 1");
        if (!(R_o > 1.0)) throw std::invalid_argument("recursion: R_o must be > 1");
        if (!(C > 1.0)) throw std::invalid_argument("recursion: C must be > 1");
    }
};

/// Nondecreasing positive growth function: closed form or tabulated.
class GrowthFunction {
public:
    static GrowthFunction power(double a, double exponent);
    static GrowthFunction constant(double c);
    /// Piecewise power law: value a_i * r^{e_i} on [breaks_i, breaks_{i+1}).
    static GrowthFunction piecewise(std::vector<double> breaks, std::vector<double> a,
                                    std::vector<double> e);
    /// Tabulated on an increasing grid; step interpolation from the left.
    static GrowthFunction table(std::vector<double> r, std::vector<double> v);

    static GrowthFunction from_json(const nlohmann::json& j);

    double operator()(double r) const;
    bool tabulated() const { return std::holds_alternative<Table>(form_); }
    std::string describe() const;

private:
    struct Power {
        double a, e;
    };
    struct Constant {
        double c;
    };
    struct Piecewise {
        std::vector<double> breaks, a, e;
    };
    struct Table {
        std::vector<double> r, v;
    };
    std::variant<Power, Constant, Piecewise, Table> form_;
};

/// alpha(r) = min(1, log V / log r), defined for r > 1.
double growth_alpha(double value, double r);

struct HypothesisReport {
    bool pass = false;
    double first_violation_r = 0.0;
    std::string which;           // violated hypothesis, empty when pass
    double r_lo = 0.0, r_hi = 0.0;  // verified range (grid only)
    std::size_t checked = 0;
};

/// Grid check of V(R_o) >= mu and r^sigma alpha(r) V(r)^{(nu-sigma)/nu}
/// <= C V(gamma r) for every grid radius.
HypothesisReport check_hypothesis(const GrowthFunction& V, const RecursionParams& p,
                                  const std::vector<double>& grid);

struct PropagationChain {
    std::vector<double> r;       // r_j = gamma^j R_o
    std::vector<double> L;       // propagated lower bounds, L_0 = mu
    double fitted_exponent = 0.0;  // log-log slope over the last half
    bool hypothesis_failed = false;
    double failure_r = 0.0;
    /// alpha(L_j, r_j) reached zero: the bound degenerated and the chain was
    /// truncated (happens when C is large or R_o small relative to nu).
    bool collapsed = false;
};

/// Constructive bootstrap L_{j+1} = r_j^sigma alpha_j L_j^{(nu-sigma)/nu} / C
/// along r_j = gamma^j R_o; the fitted exponent approaches nu.
PropagationChain propagate_lower_bound(const GrowthFunction& V, const RecursionParams& p,
                                       int steps);

}  // namespace nlac
