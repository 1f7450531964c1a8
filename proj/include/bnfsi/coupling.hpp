#pragma once

#include <array>
#include <string>
#include <vector>

#include "bnfsi/states.hpp"

namespace bnfsi {

/// Trace states feeding the interface Riemann solver: the solid cell -1 and
/// fluid cell 0 averages together with the relaxation limits of the
/// auxiliary variables, vbar_m1 = F_bar(ubar_m1) and v0 = T_0[U].
struct TraceStates {
    ElasticState ubar_m1;
    AuxVector2 vbar_m1;
    FluidConserved u0;
    AuxVector5 v0;
    double lambda;     // fluid relaxation speed, > 0
    double lambda_bar; // solid relaxation speed, > 0
};

/// Output of the interface Riemann solver. The auxiliary states satisfy
/// vbar_R = vbar_m1 + lambda_bar (ubar_m1 - ubar_R) and
/// v_L = v0 + lambda (u_L - u0) by construction.
struct CouplingStates {
    ElasticState ubar_R;
    AuxVector2 vbar_R;
    FluidConserved u_L;
    AuxVector5 v_L;
};

struct CubicCoeffs {
    double a3, a2, a1, a0;
};

struct QuadCoeffs {
    double b2, b1, b0;
};

/// Root-selection diagnostics collected on request (see the solver remark:
/// three real roots, x1 < 0 and x3 unphysical are expected empirically).
struct SolveDiagnostics {
    int n_real_roots = 0;
    std::array<double, 3> roots{};
    bool x1_negative = false;
    bool x3_unphysical = false;
    double quad_root_small = 0.0;
    double quad_root_large = 0.0;
};

class SolverFailureError : public std::runtime_error {
public:
    SolverFailureError(const std::string& msg, const TraceStates& t)
        : std::runtime_error(msg), traces(t) {}
    TraceStates traces;
};

TraceStates make_trace_states(const ElasticState& solid_m1, const FluidConserved& fluid_0,
                              const AuxVector5& t0, double lambda, double lambda_bar,
                              const ElasticMaterial& mat);

// Coefficients of the cubic R1 in x = [alpha1 rho1]_L, transcribed from the
// closed-form solution of the coupling system.
CubicCoeffs r1_coefficients(const TraceStates& t, const ElasticMaterial& mat,
                            const GasEos& eos1, const GasEos& eos2);

// [alpha2 rho2]_L as a rational function -N1(x)/D1(x) of x.
double alpha2rho2_of_x(double x, const TraceStates& t, const ElasticMaterial& mat,
                       const GasEos& eos1, const GasEos& eos2);

// alpha1 at the fluid side of the interface, -N2(x)/D2(x); throws
// UnphysicalRootError when the value leaves (0,1).
double alpha1L_of_x(double x, const TraceStates& t, const ElasticMaterial& mat,
                    const GasEos& eos1, const GasEos& eos2);

// Coefficients of the quadratic R2 in [alpha2 rho2 v2]_L given
// x = [alpha1 rho1]_L and y = [alpha2 rho2]_L.
QuadCoeffs r2_coefficients(double x, double y, const TraceStates& t, const ElasticMaterial& mat,
                           const GasEos& eos1, const GasEos& eos2);

// All real roots in ascending order (1 or 3, counting the borderline
// double-root case as 3). Closed form plus one Newton polish per root.
std::vector<double> cubic_real_roots(const CubicCoeffs& c);

// Real roots of b2 x^2 + b1 x + b0 as (smaller, larger); evaluated without
// catastrophic cancellation (larger-magnitude root first, the other via
// Vieta's identity).
std::pair<double, double> quadratic_roots(const QuadCoeffs& c);

// The 7-step interface Riemann solver. Throws SolverFailureError (carrying
// the trace states) when R1 lacks three real roots, the volume fraction
// leaves (0,1), or the resulting fluid state is inadmissible.
CouplingStates solve_coupling(const TraceStates& t, const ElasticMaterial& mat,
                              const GasEos& eos1, const GasEos& eos2,
                              SolveDiagnostics* diag = nullptr);

// Signed, nondimensional residuals of the seven coupling conditions:
// [0] (w_R - v1L)/c_s            [1] (w_R - v2L)/c_s
// [2] (sigma_R + p1(rho1L))/(rho_s c_s^2)
// [3] (sigma_R + p2(rho2L))/(rho_s c_s^2)
// [4],[5] velocity conditions reconstructed from the auxiliary states
// [6] stress condition reconstructed from the auxiliary states
std::array<double, 7> coupling_residuals(const CouplingStates& cs, const TraceStates& t,
                                         const ElasticMaterial& mat,
                                         const GasEos& eos1, const GasEos& eos2);

} // namespace bnfsi
