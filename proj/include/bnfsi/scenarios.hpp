#pragma once

#include "bnfsi/config.hpp"
#include "bnfsi/fvm.hpp"

namespace bnfsi {

// Bubble-collapse initial data: constant solid state; fluid at rest in
// pressure equilibrium with a vapor-rich layer inside (bubble_x_lo,
// bubble_x_hi). Cell values by midpoint sampling.
CoupledField scenario_bubble_collapse(const SimulationConfig& cfg);

// Smooth grid-study initial data: constant solid state; fluid at rest with
// alpha1(x) = exp(-rate x^2), p1 = p2 = p_scale exp(x).
CoupledField scenario_grid_study(const SimulationConfig& cfg);

// Dispatch on cfg.scenario.
CoupledField make_initial_field(const SimulationConfig& cfg);

} // namespace bnfsi
