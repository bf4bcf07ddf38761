#include "nlac/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace nlac {

namespace {

double projected_component(double r, double v, double lo, double hi) {
    if (v <= lo) return std::min(r, 0.0);  // only increasing v is feasible
    if (v >= hi) return std::max(r, 0.0);  // only decreasing v is feasible
    return r;
}

struct Checkpoint {
    std::vector<double> values;
    int iteration = 0;
    double step = 1.0;
    std::vector<double> energy_trace;
};

void save_checkpoint(const std::string& path, const GridFunction& u, int iter, double step,
                     const std::vector<double>& trace) {
    nlohmann::json j;
    j["grid_function"] = u.to_json();
    j["iteration"] = iter;
    j["step"] = step;
    j["energy_trace"] = trace;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write checkpoint " + path);
    out << j.dump() << "\n";
}

bool load_checkpoint(const std::string& path, Checkpoint& ck) {
    std::ifstream in(path);
    if (!in) return false;
    nlohmann::json j;
    in >> j;
    ck.values = j.at("grid_function").at("values").get<std::vector<double>>();
    ck.iteration = j.at("iteration").get<int>();
    ck.step = j.at("step").get<double>();
    ck.energy_trace = j.at("energy_trace").get<std::vector<double>>();
    return true;
}

}  // namespace

std::vector<double> exterior_extension(const GridGeometry& geo, const ExteriorData& ext) {
    std::vector<double> v(geo.cell_count(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ext(geo.cell_center(i), geo.n);
    return v;
}

ElResidual el_residual(const GridFunction& u, const Potential& W, const NonlocalOperator& op) {
    ElResidual r;
    const auto lap = op.frac_laplacian_all(u);
    r.raw.resize(u.size());
    r.projected.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        r.raw[i] = 2.0 * lap[i] + W.d(u.value(i));
        r.projected[i] = projected_component(r.raw[i], u.value(i), -1.0, 1.0);
        r.max_abs_projected = std::max(r.max_abs_projected, std::abs(r.projected[i]));
    }
    return r;
}

ElResidual el_residual(const GridFunction& u, const Potential& W, const ModelParams& mp) {
    mp.validate();
    NonlocalOperator op(u.geometry(), mp.s, mp.quadrature, u.exterior());
    return el_residual(u, W, op);
}

MinimizeReport minimize(const ModelParams& mp, const GridGeometry& geo, const CellMask& omega,
                        const ExteriorData& exterior, const Potential& W,
                        const MinimizeOptions& opts) {
    mp.validate();
    opts.validate();
    NonlocalOperator op(geo, mp.s, mp.quadrature, exterior);

    std::vector<double> v = opts.init ? *opts.init : exterior_extension(geo, exterior);
    if (v.size() != geo.cell_count())
        throw std::invalid_argument("minimize: initial iterate size does not match grid");
    for (double& x : v) x = std::clamp(x, -1.0, 1.0);

    int start_iter = 0;
    double step = opts.step_init;
    std::vector<double> trace;
    if (opts.resume && !opts.checkpoint_path.empty()) {
        Checkpoint ck;
        if (load_checkpoint(opts.checkpoint_path, ck)) {
            v = std::move(ck.values);
            start_iter = ck.iteration;
            step = ck.step;
            trace = std::move(ck.energy_trace);
        }
    }

    auto make_fn = [&](const std::vector<double>& vals) {
        return GridFunction(geo, vals, exterior, -1.0, 1.0);
    };

    GridFunction u = make_fn(v);
    double energy = op.total_energy(u, omega, W).total;
    if (trace.empty()) trace.push_back(energy);

    const auto idx = omega.indices();
    const double vol = geo.cell_volume();

    MinimizeReport report{u, {}, 0.0, 0, false, false};

    int it = start_iter;
    for (; it < opts.max_iters; ++it) {
        const auto lap = op.frac_laplacian_all(u);
        double res_max = 0.0;
        std::vector<double> grad(u.size(), 0.0);
        for (const std::size_t i : idx) {
            const double r = 2.0 * lap[i] + W.d(u.value(i));
            grad[i] = vol * r;
            res_max = std::max(res_max, std::abs(projected_component(r, u.value(i), -1.0, 1.0)));
        }
        report.final_projected_residual = res_max;
        if (res_max <= opts.tolerance) {
            report.converged = true;
            break;
        }

        // Projected step with Armijo backtracking on the actual decrease.
        bool accepted = false;
        double alpha = step;
        while (alpha >= opts.min_step) {
            std::vector<double> vnew = v;
            double directional = 0.0;  // sum of grad * (v - vnew) >= 0
            bool moved = false;
            for (const std::size_t i : idx) {
                vnew[i] = std::clamp(v[i] - alpha * grad[i], -1.0, 1.0);
                directional += grad[i] * (v[i] - vnew[i]);
                moved = moved || vnew[i] != v[i];
            }
            if (!moved) break;  // step below value resolution
            GridFunction unew = make_fn(vnew);
            const double enew = op.total_energy(unew, omega, W).total;
            if (enew <= energy - opts.armijo * directional && enew < energy) {
                v = std::move(vnew);
                u = std::move(unew);
                energy = enew;
                accepted = true;
                break;
            }
            alpha *= opts.step_shrink;
        }
        if (!accepted) {
            // No descent direction resolvable at machine precision.
            report.stalled = true;
            report.converged = true;
            break;
        }
        step = std::min(alpha * opts.step_grow, 1e6);
        trace.push_back(energy);

        if (opts.checkpoint_every > 0 && !opts.checkpoint_path.empty() &&
            (it + 1) % opts.checkpoint_every == 0) {
            save_checkpoint(opts.checkpoint_path, u, it + 1, step, trace);
        }
    }

    report.u = u;
    report.energy_trace = std::move(trace);
    report.iterations = it;
    return report;
}

}  // namespace nlac
