#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bnfsi {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Structural property suite behind the `check` subcommand: discrete mass
// conservation through the interface, constant-equilibrium preservation,
// relaxation-projection equilibria, far-field flux-shift invariance, minmod
// contraction, EOS round trips, path-integral antisymmetry and the
// convergence order of the pure-solid subproblem. Runs in well under a
// minute.
std::vector<PropertyResult> run_property_suite();

// Prints one line per property; returns the number of failures.
int run_property_suite(std::ostream& out);

} // namespace bnfsi
