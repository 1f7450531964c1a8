#pragma once

#include <string>
#include <vector>

#include "bnfsi/fvm.hpp"
#include "bnfsi/snapshot_io.hpp"

namespace bnfsi {

struct CouplingErrors {
    double ec1; // velocity mismatch |v_mix(cell 0) - w(cell -1)|
    double ec2; // stress mismatch |alpha1 p1 + alpha2 p2 (cell 0) + sigma(cell -1)|
};

CouplingErrors coupling_errors(const CoupledField& field, const GasEos& eos1, const GasEos& eos2);

enum class Quantity { w, sigma, rho, rhov };

// Discrete L1 distance between a coarse snapshot and a finer reference
// restricted to the coarse grid by exact cell averaging. Solid quantities
// (w, sigma) integrate over the solid subdomain, fluid quantities (rho,
// rho v) over the fluid subdomain. The reference resolution must be an
// integer multiple of the coarse one.
double l1_error(const FieldSnapshot& coarse, const FieldSnapshot& reference, Quantity q);

// Experimental order of convergence log2(e_coarse / e_fine).
double eoc(double e_coarse, double e_fine);

struct ConvergenceRow {
    int n = 0;
    double ec1 = 0.0, ec2 = 0.0;
    double ew = 0.0, esigma = 0.0, erho = 0.0, erhov = 0.0;
    // EoC against the previous row; NaN in the first row.
    double ec1_eoc = 0.0, ec2_eoc = 0.0;
    double ew_eoc = 0.0, esigma_eoc = 0.0, erho_eoc = 0.0, erhov_eoc = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows; // sorted by n ascending
    int n_reference = 0;

    std::string to_csv() const;
    std::string to_table() const;
};

// Fills the EoC columns of a report whose error columns are set.
void fill_eoc_columns(ConvergenceReport& report);

} // namespace bnfsi
