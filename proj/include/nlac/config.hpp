#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlac/exterior.hpp"
#include "nlac/geometry.hpp"
#include "nlac/minimize.hpp"
#include "nlac/params.hpp"
#include "nlac/potential.hpp"
#include "nlac/recursion.hpp"

namespace nlac {

/// Experiment configuration: one JSON document, schema-validated with
/// unknown keys rejected. Flags override individual fields after load.
class ExperimentConfig {
public:
    /// Parses and validates; throws std::invalid_argument on schema errors.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);

    const nlohmann::json& raw() const { return raw_; }
    std::string hash() const;

    ModelParams model() const;
    GridGeometry grid() const;
    ExteriorData exterior() const;
    Potential potential() const;
    Thresholds thresholds(double c_grow) const;
    MinimizeOptions minimize_options() const;

    // Subcommand blocks (validated defaults when absent).
    std::vector<double> density_radii() const;
    std::vector<double> growth_radii() const;
    double density_K() const;
    double density_r_min() const;
    double density_ratio_floor() const;

    std::vector<double> barrier_radii() const;
    double barrier_tau_or_zero() const;   // 0 = derive from c_grow / 4
    double barrier_profile_constant_or_zero() const;  // 0 = derived default
    double barrier_cell_width() const;

    RecursionParams recursion_params() const;
    GrowthFunction recursion_growth() const;
    int recursion_steps() const;
    int recursion_grid_points() const;

    int grow_grid_points() const;
    int grow_verify_factor() const;

    std::string input_path(const std::string& subcommand) const;

    std::string set_shape() const;
    double set_radius() const;
    int set_random_count() const;

    std::vector<int> bench_sizes() const;
    std::vector<int> bench_threads() const;

    std::string output_dir() const { return out_dir_; }
    void set_output_dir(const std::string& d) { out_dir_ = d; }
    std::uint64_t seed() const { return seed_; }
    void set_seed(std::uint64_t s) { seed_ = s; }
    int threads() const { return threads_; }
    void set_threads(int t) { threads_ = t; }

    void override_model(std::optional<int> n, std::optional<double> s,
                        std::optional<int> cells);
    void set_input(const std::string& subcommand, const std::string& path);

private:
    nlohmann::json raw_;
    std::string out_dir_ = "out";
    std::uint64_t seed_ = 1;
    int threads_ = 0;
};

}  // namespace nlac
