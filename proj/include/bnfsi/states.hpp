#pragma once

#include <array>
#include <cmath>

#include "bnfsi/eos.hpp"
#include "bnfsi/errors.hpp"

namespace bnfsi {

// Volume fractions closer than this to 0 or 1 are treated as inadmissible
// rather than being clipped; silent clipping would mask scheme failures.
inline constexpr double kAlphaMargin = 1e-10;

/// State of the linear-elastic solid: deformation velocity and shear stress.
struct ElasticState {
    double w;     // [m/s]
    double sigma; // [Pa]
};

/// Conserved fluid state U = (alpha1, alpha1 rho1, alpha1 rho1 v1,
/// alpha2 rho2, alpha2 rho2 v2); alpha2 = 1 - alpha1 is never stored.
struct FluidConserved {
    double alpha1; // [-]
    double m1;     // alpha1 rho1 [kg/m^3]
    double q1;     // alpha1 rho1 v1 [kg/(m^2 s)]
    double m2;     // alpha2 rho2 [kg/m^3]
    double q2;     // alpha2 rho2 v2 [kg/(m^2 s)]
};

struct FluidPrimitive {
    double alpha1;
    double rho1;
    double v1;
    double rho2;
    double v2;
};

// Auxiliary (relaxation) variables; components match the conserved layout.
using AuxVector5 = std::array<double, 5>;
using AuxVector2 = std::array<double, 2>;

/// Choice of interfacial velocity/pressure closure.
struct InterfacialParams {
    enum class Mode { weighted, mixture };
    Mode mode = Mode::mixture;
    // Only used in weighted mode; d1 + d2 = 1, both in [0,1].
    double d1 = 0.5;
    double d2 = 0.5;
};

struct MixtureState {
    double rho;   // m1 + m2
    double rho_v; // q1 + q2
    double p;     // alpha1 p1 + alpha2 p2
};

struct InterfacialState {
    double v_i;
    double p_i;
};

bool is_admissible(const FluidConserved& u);
void require_admissible(const FluidConserved& u);

FluidPrimitive cons_to_prim(const FluidConserved& u);
FluidConserved prim_to_cons(const FluidPrimitive& p);

MixtureState mixture(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2);

InterfacialState interfacial_states(const FluidConserved& u, const InterfacialParams& params,
                                    const GasEos& eos1, const GasEos& eos2);

// F_bar(U_bar) = -(sigma/rho_s, rho_s c_s^2 w)
AuxVector2 elastic_flux(const ElasticMaterial& mat, const ElasticState& s);

// F(U) = (0, q1, q1 v1 + alpha1 p1, q2, q2 v2 + alpha2 p2)
AuxVector5 fluid_flux(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2);

// g(U) = (v_I, 0, p_I, 0, -p_I)
AuxVector5 noncons_coeff(const FluidConserved& u, const InterfacialParams& params,
                         const GasEos& eos1, const GasEos& eos2);

// ---------------------------------------------------------------------------
// Inline cores shared by the module-level operations and the FV engine, so
// that both compute identical floating-point values.

// Interfacial closure evaluated on raw components. In mixture mode p_I is
// evaluated in the affine form c1^2 m1 + c2^2 m2 - alpha1 pi1 - alpha2 pi2,
// algebraically equal to alpha1 p1 + alpha2 p2.
inline InterfacialState interfacial_core(double alpha1, double m1, double q1, double m2, double q2,
                                         const InterfacialParams& ip,
                                         const GasEos& e1, const GasEos& e2) {
    if (ip.mode == InterfacialParams::Mode::mixture) {
        const double v_i = (q1 + q2) / (m1 + m2);
        const double p_i = e1.c * e1.c * m1 + e2.c * e2.c * m2 - alpha1 * e1.pi - (1.0 - alpha1) * e2.pi;
        return {v_i, p_i};
    }
    const double denom = ip.d1 * m1 + ip.d2 * m2;
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw DegenerateWeightsError("interfacial_states: d1*m1 + d2*m2 is not positive");
    }
    const double beta1 = ip.d1 * m1 / denom;
    const double beta2 = ip.d2 * m2 / denom;
    const double v1 = q1 / m1;
    const double v2 = q2 / m2;
    const double p1 = e1.c * e1.c * (m1 / alpha1) - e1.pi;
    const double p2 = e2.c * e2.c * (m2 / (1.0 - alpha1)) - e2.pi;
    return {beta1 * v1 + beta2 * v2, beta2 * p1 + beta1 * p2};
}

// Physical flux on raw components, phase pressure terms in the affine form
// alpha_k p_k = c_k^2 m_k - alpha_k pi_k.
inline void fluid_flux_core(double alpha1, double m1, double q1, double m2, double q2,
                            const GasEos& e1, const GasEos& e2, double out[5]) {
    const double v1 = q1 / m1;
    const double v2 = q2 / m2;
    out[0] = 0.0;
    out[1] = q1;
    out[2] = q1 * v1 + (e1.c * e1.c * m1 - alpha1 * e1.pi);
    out[3] = q2;
    out[4] = q2 * v2 + (e2.c * e2.c * m2 - (1.0 - alpha1) * e2.pi);
}

} // namespace bnfsi
