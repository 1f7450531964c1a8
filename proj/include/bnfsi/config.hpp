#pragma once

#include <string>
#include <vector>

#include "bnfsi/fvm.hpp"

namespace bnfsi {

/// Full description of one run. Flat `section.key = value` text format with
/// `#` comments; SI units throughout. Defaults reproduce the bubble-collapse
/// configuration.
struct SimulationConfig {
    // scenario
    std::string scenario = "bubble"; // "bubble" | "gridstudy"

    // grid: solid occupies (x_min, 0), fluid (0, x_max); equal cell width
    // on both sides.
    int n_solid = 600;
    int n_fluid = 600;
    double x_min = -0.2;
    double x_max = 0.2;

    // materials
    ElasticMaterial mat{7800.0, 5990.0};
    GasEos eos1{367.58, 0.0};
    GasEos eos2{1483.3, 1.1358e9};

    InterfacialParams iparams{};

    // time control
    double cfl = 0.2;
    TimeControl::Mode time_mode = TimeControl::Mode::hyperbolic;
    double t_end = 1.0e-3;
    std::vector<double> output_times;

    RelaxationMode relax = RelaxationMode::instantaneous;
    int quadrature_order = 3;
    double fixed_lambda = 0.0; // 0 = recompute per step
    std::string output_dir = "out";

    // bubble scenario parameters
    double bubble_x_lo = 0.075;
    double bubble_x_hi = 0.125;
    double bubble_alpha_in = 0.9;
    double bubble_alpha_out = 0.1;
    double bubble_p_in = 3.5e3;
    double bubble_p_out = 1.75e7;
    double bubble_sigma0 = -3.5e7;
    double bubble_w0 = 0.0;

    // grid-study scenario parameters: alpha1(x) = exp(-alpha_rate x^2),
    // p1 = p2 = p_scale exp(x).
    double gridstudy_sigma0 = -3.5e5;
    double gridstudy_w0 = 0.0;
    double gridstudy_alpha_rate = 200.0;
    double gridstudy_p_scale = 3.5e5;
};

SimulationConfig parse_config(const std::string& text);
std::string serialize_config(const SimulationConfig& cfg);
SimulationConfig load_config(const std::string& path);
void save_config(const SimulationConfig& cfg, const std::string& path);

// Consistency checks (extents, output times, interfacial closure); throws
// ConfigError. Runs with the coupled engine require the mixture closure,
// for which the interface solver's closed form is derived.
void validate_config(const SimulationConfig& cfg);

Grid grid_from_config(const SimulationConfig& cfg);
SchemeParams scheme_params_from_config(const SimulationConfig& cfg);
TimeControl time_control_from_config(const SimulationConfig& cfg);

} // namespace bnfsi
