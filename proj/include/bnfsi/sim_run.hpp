#pragma once

#include <functional>
#include <vector>

#include "bnfsi/config.hpp"
#include "bnfsi/metrics.hpp"
#include "bnfsi/snapshot_io.hpp"

namespace bnfsi {

// Advances the configured scenario from t = 0 to t_end and returns one
// snapshot per configured output time, each taken at the completed step
// nearest to the requested time. Deterministic.
std::vector<FieldSnapshot> run(const SimulationConfig& cfg);

// Same, invoking `sink` as snapshots are produced (pure observer).
void run_simulation(const SimulationConfig& cfg,
                    const std::function<void(const FieldSnapshot&)>& sink);

// Grid-refinement ladder: runs cfg at each resolution in `cells` (cells per
// subdomain) plus the reference resolution, measures the coupling errors of
// the final field and the L1 distances to the restricted reference.
ConvergenceReport convergence_study(const SimulationConfig& cfg, const std::vector<int>& cells,
                                    int reference_cells);

} // namespace bnfsi
