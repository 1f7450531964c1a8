#include "bnfsi/scenarios.hpp"

#include <cmath>

namespace bnfsi {

namespace {

FluidConserved rest_state(double alpha1, double p, const GasEos& e1, const GasEos& e2) {
    FluidPrimitive pr;
    pr.alpha1 = alpha1;
    pr.rho1 = density_from_pressure(e1, p);
    pr.v1 = 0.0;
    pr.rho2 = density_from_pressure(e2, p);
    pr.v2 = 0.0;
    return prim_to_cons(pr);
}

} // namespace

CoupledField scenario_bubble_collapse(const SimulationConfig& cfg) {
    validate_config(cfg);
    const Grid grid = grid_from_config(cfg);
    if (!(cfg.bubble_x_lo < cfg.bubble_x_hi && cfg.bubble_x_lo > 0.0 &&
          cfg.bubble_x_hi < cfg.x_max)) {
        throw ConfigError("bubble scenario: bubble interval outside the fluid domain");
    }
    CoupledField f;
    f.time = 0.0;
    f.solid.assign(cfg.n_solid, {cfg.bubble_w0, cfg.bubble_sigma0});
    const FluidConserved inside = rest_state(cfg.bubble_alpha_in, cfg.bubble_p_in, cfg.eos1, cfg.eos2);
    const FluidConserved outside =
        rest_state(cfg.bubble_alpha_out, cfg.bubble_p_out, cfg.eos1, cfg.eos2);
    f.fluid.resize(cfg.n_fluid);
    for (int j = 0; j < cfg.n_fluid; ++j) {
        const double x = grid.fluid_center(j);
        f.fluid[j] = (x > cfg.bubble_x_lo && x < cfg.bubble_x_hi) ? inside : outside;
    }
    return f;
}

CoupledField scenario_grid_study(const SimulationConfig& cfg) {
    validate_config(cfg);
    const Grid grid = grid_from_config(cfg);
    CoupledField f;
    f.time = 0.0;
    f.solid.assign(cfg.n_solid, {cfg.gridstudy_w0, cfg.gridstudy_sigma0});
    f.fluid.resize(cfg.n_fluid);
    for (int j = 0; j < cfg.n_fluid; ++j) {
        const double x = grid.fluid_center(j);
        const double alpha = std::exp(-cfg.gridstudy_alpha_rate * x * x);
        const double p = cfg.gridstudy_p_scale * std::exp(x);
        FluidPrimitive pr;
        pr.alpha1 = alpha;
        pr.rho1 = density_from_pressure(cfg.eos1, p);
        pr.v1 = 0.0;
        pr.rho2 = density_from_pressure(cfg.eos2, p);
        pr.v2 = 0.0;
        f.fluid[j] = prim_to_cons(pr);
    }
    return f;
}

CoupledField make_initial_field(const SimulationConfig& cfg) {
    if (cfg.scenario == "bubble") return scenario_bubble_collapse(cfg);
    if (cfg.scenario == "gridstudy") return scenario_grid_study(cfg);
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

} // namespace bnfsi
