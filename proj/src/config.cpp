#include "nlac/config.hpp"

#include <fstream>
#include <set>

#include "nlac/report_io.hpp"

namespace nlac {

namespace {

void reject_unknown(const nlohmann::json& j, const std::string& where,
                    const std::set<std::string>& allowed) {
    if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
    }
}

template <class T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

const nlohmann::json kEmpty = nlohmann::json::object();

const nlohmann::json& block(const nlohmann::json& j, const std::string& key) {
    return j.contains(key) ? j.at(key) : kEmpty;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    reject_unknown(j, "top level",
                   {"model", "grid", "potential", "exterior", "thresholds", "minimize", "density",
                    "barrier", "recursion", "grow", "sobolev", "levelset", "set_sobolev", "bench",
                    "output_dir", "seed", "threads"});
    reject_unknown(block(j, "model"), "model", {"n", "s", "quadrature"});
    reject_unknown(block(block(j, "model"), "quadrature"), "model.quadrature",
                   {"near_depth", "kappa", "far_field_radius", "angular_points", "polar_points",
                    "gauss_order"});
    reject_unknown(block(j, "grid"), "grid", {"center", "half_width", "cells_per_axis"});
    reject_unknown(block(j, "potential"), "potential", {"kind", "path"});
    reject_unknown(block(j, "exterior"), "exterior",
                   {"kind", "value", "direction", "name", "limit"});
    reject_unknown(block(j, "thresholds"), "thresholds", {"theta1", "theta2"});
    reject_unknown(block(j, "minimize"), "minimize",
                   {"max_iters", "tolerance", "checkpoint_every", "checkpoint_path", "resume"});
    reject_unknown(block(j, "density"), "density",
                   {"radii", "growth_radii", "K", "r_min", "ratio_floor"});
    reject_unknown(block(j, "barrier"), "barrier", {"radii", "tau", "C_b", "cell_width"});
    reject_unknown(block(j, "recursion"), "recursion",
                   {"sigma", "mu", "nu", "gamma", "R_o", "C", "steps", "grid_points", "V"});
    reject_unknown(block(j, "grow"), "grow", {"grid_points", "verify_factor"});
    reject_unknown(block(j, "sobolev"), "sobolev", {"input"});
    reject_unknown(block(j, "levelset"), "levelset", {"input"});
    reject_unknown(block(j, "set_sobolev"), "set_sobolev", {"shape", "radius", "count"});
    reject_unknown(block(j, "bench"), "bench", {"sizes", "threads"});

    ExperimentConfig c;
    c.raw_ = j;
    c.out_dir_ = get_or<std::string>(j, "output_dir", "out");
    c.seed_ = get_or<std::uint64_t>(j, "seed", 1);
    c.threads_ = get_or<int>(j, "threads", 0);
    // Eagerly validate the core blocks so bad configs fail at load time.
    c.model();
    c.grid();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

std::string ExperimentConfig::hash() const {
    nlohmann::json j = raw_;
    j["output_dir"] = out_dir_;
    j["seed"] = seed_;
    j["threads"] = threads_;
    return config_hash(j);
}

ModelParams ExperimentConfig::model() const {
    const auto& m = block(raw_, "model");
    ModelParams mp;
    mp.n = get_or<int>(m, "n", 1);
    mp.s = get_or<double>(m, "s", 0.25);
    const auto& q = block(m, "quadrature");
    mp.quadrature.near_depth = get_or<int>(q, "near_depth", 6);
    mp.quadrature.kappa = get_or<double>(q, "kappa", 3.0);
    mp.quadrature.far_field_radius = get_or<double>(q, "far_field_radius", 64.0);
    mp.quadrature.angular_points = get_or<int>(q, "angular_points", 256);
    mp.quadrature.polar_points = get_or<int>(q, "polar_points", 24);
    mp.quadrature.gauss_order = get_or<int>(q, "gauss_order", 2);
    mp.validate();
    return mp;
}

GridGeometry ExperimentConfig::grid() const {
    const auto& g = block(raw_, "grid");
    const int n = model().n;
    Vec center{0.0, 0.0, 0.0};
    if (g.contains("center")) {
        const auto& arr = g.at("center");
        for (int a = 0; a < n && a < static_cast<int>(arr.size()); ++a)
            center[a] = arr[a].get<double>();
    }
    return GridGeometry(n, center, get_or<double>(g, "half_width", 1.0),
                        get_or<int>(g, "cells_per_axis", 64));
}

ExteriorData ExperimentConfig::exterior() const {
    if (!raw_.contains("exterior")) return ExteriorData::zero();
    return ExteriorData::from_descriptor(raw_.at("exterior"), model().n);
}

Potential ExperimentConfig::potential() const {
    const auto& p = block(raw_, "potential");
    const std::string kind = get_or<std::string>(p, "kind", "quartic");
    if (kind == "quartic") return Potential::quartic();
    if (kind == "table") return Potential::from_csv(p.at("path").get<std::string>());
    throw std::invalid_argument("config: unknown potential kind '" + kind + "'");
}

Thresholds ExperimentConfig::thresholds(double c_grow) const {
    const auto& t = block(raw_, "thresholds");
    Thresholds th;
    th.theta1 = get_or<double>(t, "theta1", 0.0);
    th.theta2 = get_or<double>(t, "theta2", 0.0);
    th.c_grow = c_grow;
    th.validate();
    return th;
}

MinimizeOptions ExperimentConfig::minimize_options() const {
    const auto& m = block(raw_, "minimize");
    MinimizeOptions o;
    o.max_iters = get_or<int>(m, "max_iters", 20000);
    o.tolerance = get_or<double>(m, "tolerance", 1e-6);
    o.checkpoint_every = get_or<int>(m, "checkpoint_every", 0);
    o.checkpoint_path = get_or<std::string>(m, "checkpoint_path", "");
    o.resume = get_or<bool>(m, "resume", false);
    o.validate();
    return o;
}

std::vector<double> ExperimentConfig::density_radii() const {
    const auto& d = block(raw_, "density");
    if (d.contains("radii")) return d.at("radii").get<std::vector<double>>();
    return {2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64};
}

std::vector<double> ExperimentConfig::growth_radii() const {
    const auto& d = block(raw_, "density");
    if (d.contains("growth_radii")) return d.at("growth_radii").get<std::vector<double>>();
    return {8, 16, 32, 64};
}

double ExperimentConfig::density_K() const { return get_or<double>(block(raw_, "density"), "K", 4.0); }
double ExperimentConfig::density_r_min() const {
    return get_or<double>(block(raw_, "density"), "r_min", 4.0);
}
double ExperimentConfig::density_ratio_floor() const {
    return get_or<double>(block(raw_, "density"), "ratio_floor", 0.1);
}

std::vector<double> ExperimentConfig::barrier_radii() const {
    const auto& b = block(raw_, "barrier");
    if (b.contains("radii")) return b.at("radii").get<std::vector<double>>();
    return {16, 32, 64, 128};
}

double ExperimentConfig::barrier_tau_or_zero() const {
    return get_or<double>(block(raw_, "barrier"), "tau", 0.0);
}

double ExperimentConfig::barrier_profile_constant_or_zero() const {
    return get_or<double>(block(raw_, "barrier"), "C_b", 0.0);
}

double ExperimentConfig::barrier_cell_width() const {
    return get_or<double>(block(raw_, "barrier"), "cell_width", 0.25);
}

RecursionParams ExperimentConfig::recursion_params() const {
    const auto& r = block(raw_, "recursion");
    RecursionParams p;
    p.sigma = get_or<double>(r, "sigma", 0.5);
    p.mu = get_or<double>(r, "mu", 16.0);
    p.nu = get_or<double>(r, "nu", 2.0);
    p.gamma = get_or<double>(r, "gamma", 2.0);
    p.R_o = get_or<double>(r, "R_o", 4.0);
    p.C = get_or<double>(r, "C", 1.05);
    p.validate();
    return p;
}

GrowthFunction ExperimentConfig::recursion_growth() const {
    const auto& r = block(raw_, "recursion");
    if (r.contains("V")) return GrowthFunction::from_json(r.at("V"));
    return GrowthFunction::power(1.0, 2.0);
}

int ExperimentConfig::recursion_steps() const {
    return get_or<int>(block(raw_, "recursion"), "steps", 40);
}

int ExperimentConfig::recursion_grid_points() const {
    return get_or<int>(block(raw_, "recursion"), "grid_points", 40);
}

int ExperimentConfig::grow_grid_points() const {
    return get_or<int>(block(raw_, "grow"), "grid_points", 512);
}

int ExperimentConfig::grow_verify_factor() const {
    return get_or<int>(block(raw_, "grow"), "verify_factor", 10);
}

std::string ExperimentConfig::input_path(const std::string& subcommand) const {
    const auto& b = block(raw_, subcommand);
    return get_or<std::string>(b, "input", "");
}

void ExperimentConfig::set_input(const std::string& subcommand, const std::string& path) {
    raw_[subcommand]["input"] = path;
}

std::string ExperimentConfig::set_shape() const {
    return get_or<std::string>(block(raw_, "set_sobolev"), "shape", "ball");
}

double ExperimentConfig::set_radius() const {
    return get_or<double>(block(raw_, "set_sobolev"), "radius", 0.5);
}

int ExperimentConfig::set_random_count() const {
    return get_or<int>(block(raw_, "set_sobolev"), "count", 50);
}

std::vector<int> ExperimentConfig::bench_sizes() const {
    const auto& b = block(raw_, "bench");
    if (b.contains("sizes")) return b.at("sizes").get<std::vector<int>>();
    return {128, 256, 512, 1024};
}

std::vector<int> ExperimentConfig::bench_threads() const {
    const auto& b = block(raw_, "bench");
    if (b.contains("threads")) return b.at("threads").get<std::vector<int>>();
    return {1, 2, 4};
}

void ExperimentConfig::override_model(std::optional<int> n, std::optional<double> s,
                                      std::optional<int> cells) {
    if (n) raw_["model"]["n"] = *n;
    if (s) raw_["model"]["s"] = *s;
    if (cells) raw_["grid"]["cells_per_axis"] = *cells;
    model();
    grid();
}

}  // namespace nlac
