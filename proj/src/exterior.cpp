#include "nlac/exterior.hpp"

#include <cmath>

namespace nlac {

ExteriorData ExteriorData::zero() {
    ExteriorData e;
    e.kind_ = Kind::Zero;
    e.lo_ = e.hi_ = 0.0;
    return e;
}

ExteriorData ExteriorData::constant(double v) {
    ExteriorData e;
    e.kind_ = Kind::Constant;
    e.value_ = v;
    e.lo_ = e.hi_ = v;
    return e;
}

ExteriorData ExteriorData::half_space(const Vec& direction, int n) {
    ExteriorData e;
    e.kind_ = Kind::HalfSpace;
    const double len = norm(direction, n);
    if (!(len > 0.0)) throw std::invalid_argument("half_space: zero direction");
    for (int a = 0; a < n; ++a) e.direction_[a] = direction[a] / len;
    for (int a = n; a < 3; ++a) e.direction_[a] = 0.0;
    e.lo_ = -1.0;
    e.hi_ = 1.0;
    return e;
}

ExteriorData ExteriorData::radial(std::function<double(double)> profile, double limit,
                                  std::string name) {
    ExteriorData e;
    e.kind_ = Kind::Radial;
    e.profile_ = std::move(profile);
    e.limit_ = limit;
    e.name_ = std::move(name);
    // Declared range is probed on a coarse radial mesh; radial profiles are
    // user-supplied closed forms expected to be bounded.
    double lo = limit, hi = limit;
    for (int i = 0; i <= 4096; ++i) {
        const double v = e.profile_(0.01 * i);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    e.lo_ = lo;
    e.hi_ = hi;
    return e;
}

double ExteriorData::limit_at_infinity() const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return value_;
        case Kind::HalfSpace:
            throw std::logic_error("half-space exterior has direction-dependent limits");
        case Kind::Radial: return limit_;
    }
    return 0.0;
}

double ExteriorData::operator()(const Vec& x, int n) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return value_;
        case Kind::HalfSpace: return dot(x, direction_, n) > 0.0 ? 1.0 : -1.0;
        case Kind::Radial: return profile_(norm(x, n));
    }
    return 0.0;
}

bool ExteriorData::operator==(const ExteriorData& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Zero: return true;
        case Kind::Constant: return value_ == o.value_;
        case Kind::HalfSpace: return direction_ == o.direction_;
        case Kind::Radial: return name_ == o.name_ && !name_.empty();
    }
    return false;
}

nlohmann::json ExteriorData::descriptor() const {
    using nlohmann::json;
    switch (kind_) {
        case Kind::Zero: return json{{"kind", "zero"}};
        case Kind::Constant: return json{{"kind", "constant"}, {"value", value_}};
        case Kind::HalfSpace: {
            json d = json::array();
            for (double c : direction_) d.push_back(c);
            return json{{"kind", "half_space"}, {"direction", d}};
        }
        case Kind::Radial: return json{{"kind", "radial"}, {"name", name_}, {"limit", limit_}};
    }
    return {};
}

ExteriorData ExteriorData::from_descriptor(const nlohmann::json& j, int n) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return zero();
    if (kind == "constant") return constant(j.at("value").get<double>());
    if (kind == "half_space") {
        Vec d{0.0, 0.0, 0.0};
        const auto& arr = j.at("direction");
        for (std::size_t a = 0; a < arr.size() && a < 3; ++a) d[a] = arr[a].get<double>();
        return half_space(d, n);
    }
    if (kind == "radial") {
        // Named built-in radial profiles; arbitrary closed forms are not
        // round-trippable through JSON.
        const std::string name = j.at("name").get<std::string>();
        if (name == "one") return radial([](double) { return 1.0; }, 1.0, "one");
        if (name == "minus_one") return radial([](double) { return -1.0; }, -1.0, "minus_one");
        if (name == "tanh_shell") {
            return radial([](double r) { return std::tanh(r - 4.0); }, 1.0, "tanh_shell");
        }
        throw std::invalid_argument("unknown radial exterior profile: " + name);
    }
    throw std::invalid_argument("unknown exterior kind: " + kind);
}

ExteriorData min_exterior(const ExteriorData& a, const ExteriorData& b, int n) {
    using Kind = ExteriorData::Kind;
    if (a == b) return a;
    if (a.kind() == Kind::Constant && b.kind() == Kind::Constant)
        return ExteriorData::constant(std::min(a.constant_value(), b.constant_value()));
    // A constant sitting above (below) the other range is absorbed (dominates).
    auto try_const = [n](const ExteriorData& c, const ExteriorData& other)
        -> std::pair<bool, ExteriorData> {
        (void)n;
        if (c.kind() != Kind::Constant) return {false, ExteriorData::zero()};
        if (c.constant_value() >= other.upper()) return {true, other};
        if (c.constant_value() <= other.lower()) return {true, c};
        return {false, ExteriorData::zero()};
    };
    if (auto [ok, e] = try_const(a, b); ok) return e;
    if (auto [ok, e] = try_const(b, a); ok) return e;
    throw std::invalid_argument("min_exterior: result not representable for these exterior kinds");
}

}  // namespace nlac
