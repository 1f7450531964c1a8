#pragma once

#include <cstddef>
#include <vector>

#include "bnfsi/states.hpp"

namespace bnfsi {

/// Family of segment paths Phi(s, U-, U+) = U- + s (U+ - U-), applied in
/// conserved variables. Stateless; endpoints are reproduced exactly.
struct SegmentPath {
    static FluidConserved eval(double s, const FluidConserved& um, const FluidConserved& up);
};

/// Quadrature nodes/weights on [0,1]. Default is 3-node Gauss-Legendre,
/// exact for polynomials of degree <= 5 (the mixture-mode p_I integrand is
/// affine along segment paths, so integrated exactly).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    static QuadratureRule gauss_legendre(int n);
};

/// Ordered fluid cell states plus the far-field state entering F(U_inf).
/// The field is extended by its last cell beyond the right end; U_inf only
/// offsets the fluxes and drops out of all flux differences.
struct FluidField {
    std::vector<FluidConserved> cells;
    FluidConserved u_inf;
};

// Phi(s, U-, U+); s must lie in [0,1].
FluidConserved segment_eval(double s, const FluidConserved& um, const FluidConserved& up);

// P(U-, U+; G) = dal1 * sum_i w_i g(Phi(s_i)) with dal1 = alpha1+ - alpha1-.
// Components 2 and 4 are exactly zero and component 5 = -component 3.
AuxVector5 path_integral_G(const FluidConserved& um, const FluidConserved& up,
                           const InterfacialParams& params, const GasEos& eos1, const GasEos& eos2,
                           const QuadratureRule& quad);

// Discretized nonlocal operator, one value per cell:
//   T_j = F(U_j) - F(U_inf) - sum_{k>=j} P(U_k, U_{k+1}; G),
// accumulated in a single right-to-left pass.
std::vector<AuxVector5> discrete_T(const FluidField& field, const InterfacialParams& params,
                                   const GasEos& eos1, const GasEos& eos2,
                                   const QuadratureRule& quad);

// ---------------------------------------------------------------------------
// Inline core shared with the FV engine.

// The two independent scalars of P(U-, U+; G): the full vector is
// (pv, 0, pp, 0, -pp).
struct PathPair {
    double pv;
    double pp;
};

inline PathPair path_integral_core(double a_m, double m1_m, double q1_m, double m2_m, double q2_m,
                                   double a_p, double m1_p, double q1_p, double m2_p, double q2_p,
                                   const InterfacialParams& ip, const GasEos& e1, const GasEos& e2,
                                   const QuadratureRule& quad) {
    const double dal = a_p - a_m;
    if (dal == 0.0) {
        return {0.0, 0.0};
    }
    const double dm1 = m1_p - m1_m;
    const double dq1 = q1_p - q1_m;
    const double dm2 = m2_p - m2_m;
    const double dq2 = q2_p - q2_m;
    double acc_v = 0.0;
    double acc_p = 0.0;
    const std::size_t n = quad.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double s = quad.nodes[i];
        const InterfacialState is =
            interfacial_core(a_m + s * dal, m1_m + s * dm1, q1_m + s * dq1,
                             m2_m + s * dm2, q2_m + s * dq2, ip, e1, e2);
        acc_v += quad.weights[i] * is.v_i;
        acc_p += quad.weights[i] * is.p_i;
    }
    return {dal * acc_v, dal * acc_p};
}

inline PathPair path_integral_core(const FluidConserved& um, const FluidConserved& up,
                                   const InterfacialParams& ip, const GasEos& e1, const GasEos& e2,
                                   const QuadratureRule& quad) {
    return path_integral_core(um.alpha1, um.m1, um.q1, um.m2, um.q2,
                              up.alpha1, up.m1, up.q1, up.m2, up.q2, ip, e1, e2, quad);
}

} // namespace bnfsi
