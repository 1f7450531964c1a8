#pragma once

#include <string>
#include <vector>

#include "bnfsi/fvm.hpp"

namespace bnfsi {

struct SolidRecord {
    double x, w, sigma;
};

struct FluidRecord {
    double x, alpha1, rho1, v1, p1, rho2, v2, p2, rho, v, p;
};

/// Per-cell output record of one simulation time. `time` is the completed
/// step time the snapshot was taken at, `requested_time` the configured
/// output time it serves.
struct FieldSnapshot {
    double time = 0.0;
    double requested_time = 0.0;
    std::vector<SolidRecord> solid;
    std::vector<FluidRecord> fluid;
};

FieldSnapshot make_snapshot(const CoupledField& field, const Grid& grid, const GasEos& eos1,
                            const GasEos& eos2, double requested_time);

// Writes `solid_t<mu-s>.csv` and `fluid_t<mu-s>.csv` under dir, numbers in
// round-trip precision. Returns the two paths (solid, fluid).
std::pair<std::string, std::string> write_snapshot_csv(const FieldSnapshot& s,
                                                       const std::string& dir);

// Reads back a pair of files written by write_snapshot_csv.
FieldSnapshot read_snapshot_csv(const std::string& solid_path, const std::string& fluid_path);

} // namespace bnfsi
