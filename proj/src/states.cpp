#include "bnfsi/states.hpp"

#include <cmath>
#include <string>

namespace bnfsi {

bool is_admissible(const FluidConserved& u) {
    return std::isfinite(u.alpha1) && std::isfinite(u.m1) && std::isfinite(u.q1) &&
           std::isfinite(u.m2) && std::isfinite(u.q2) &&
           u.alpha1 >= kAlphaMargin && u.alpha1 <= 1.0 - kAlphaMargin &&
           u.m1 > 0.0 && u.m2 > 0.0;
}

void require_admissible(const FluidConserved& u) {
    if (!is_admissible(u)) {
        throw InvalidStateError("inadmissible fluid state: alpha1=" + std::to_string(u.alpha1) +
                                " m1=" + std::to_string(u.m1) + " m2=" + std::to_string(u.m2));
    }
}

FluidPrimitive cons_to_prim(const FluidConserved& u) {
    require_admissible(u);
    FluidPrimitive p;
    p.alpha1 = u.alpha1;
    p.rho1 = u.m1 / u.alpha1;
    p.v1 = u.q1 / u.m1;
    p.rho2 = u.m2 / (1.0 - u.alpha1);
    p.v2 = u.q2 / u.m2;
    return p;
}

FluidConserved prim_to_cons(const FluidPrimitive& p) {
    if (!(p.alpha1 >= kAlphaMargin && p.alpha1 <= 1.0 - kAlphaMargin) ||
        !(p.rho1 > 0.0) || !(p.rho2 > 0.0)) {
        throw InvalidStateError("prim_to_cons: inadmissible primitive state");
    }
    FluidConserved u;
    u.alpha1 = p.alpha1;
    u.m1 = p.alpha1 * p.rho1;
    u.q1 = u.m1 * p.v1;
    u.m2 = (1.0 - p.alpha1) * p.rho2;
    u.q2 = u.m2 * p.v2;
    return u;
}

MixtureState mixture(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2) {
    const FluidPrimitive p = cons_to_prim(u);
    MixtureState m;
    m.rho = u.m1 + u.m2;
    m.rho_v = u.q1 + u.q2;
    m.p = u.alpha1 * pressure(eos1, p.rho1) + (1.0 - u.alpha1) * pressure(eos2, p.rho2);
    return m;
}

InterfacialState interfacial_states(const FluidConserved& u, const InterfacialParams& params,
                                    const GasEos& eos1, const GasEos& eos2) {
    require_admissible(u);
    return interfacial_core(u.alpha1, u.m1, u.q1, u.m2, u.q2, params, eos1, eos2);
}

AuxVector2 elastic_flux(const ElasticMaterial& mat, const ElasticState& s) {
    const double k = mat.rho_s * (mat.c_s * mat.c_s);
    return {-s.sigma / mat.rho_s, -k * s.w};
}

AuxVector5 fluid_flux(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2) {
    require_admissible(u);
    AuxVector5 f;
    fluid_flux_core(u.alpha1, u.m1, u.q1, u.m2, u.q2, eos1, eos2, f.data());
    return f;
}

AuxVector5 noncons_coeff(const FluidConserved& u, const InterfacialParams& params,
                         const GasEos& eos1, const GasEos& eos2) {
    const InterfacialState is = interfacial_states(u, params, eos1, eos2);
    return {is.v_i, 0.0, is.p_i, 0.0, -is.p_i};
}

} // namespace bnfsi
