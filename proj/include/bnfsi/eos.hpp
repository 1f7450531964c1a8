#pragma once

#include "bnfsi/errors.hpp"

namespace bnfsi {

struct FluidConserved;

/// Isothermal stiffened gas, p(rho) = c^2 rho - pi.
struct GasEos {
    double c;  // isothermal sound speed [m/s], c > 0
    double pi; // minimal pressure [Pa], pi >= 0
};

/// Linear-elastic solid parameters.
struct ElasticMaterial {
    double rho_s; // density [kg/m^3], > 0
    double c_s;   // dilatation wave velocity [m/s], > 0
};

// p = c^2 rho - pi. Throws InvalidStateError for rho <= 0.
double pressure(const GasEos& eos, double rho);

// Inverse of pressure(): rho = (p + pi)/c^2. Throws for p <= -pi.
double density_from_pressure(const GasEos& eos, double p);

// Spectral radius of the elastic flux Jacobian; exactly c_s.
double elastic_wave_bound(const ElasticMaterial& mat);

// Upper bound max(|v1|+c1, |v2|+c2) for the spectral radius of the
// fluid quasilinear matrix A(U). Dominates |v_I| for any convex
// interfacial closure.
double fluid_wave_bound(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2);

} // namespace bnfsi
