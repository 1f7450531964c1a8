#include "bnfsi/eos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnfsi/states.hpp"

namespace bnfsi {

double pressure(const GasEos& eos, double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw InvalidStateError("pressure: non-positive density " + std::to_string(rho));
    }
    return eos.c * eos.c * rho - eos.pi;
}

double density_from_pressure(const GasEos& eos, double p) {
    if (!(p + eos.pi > 0.0) || !std::isfinite(p)) {
        throw InvalidStateError("density_from_pressure: p <= -pi, p = " + std::to_string(p));
    }
    return (p + eos.pi) / (eos.c * eos.c);
}

double elastic_wave_bound(const ElasticMaterial& mat) {
    // Eigenvalues of the elastic flux Jacobian are +-c_s.
    return mat.c_s;
}

double fluid_wave_bound(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2) {
    require_admissible(u);
    const double v1 = u.q1 / u.m1;
    const double v2 = u.q2 / u.m2;
    return std::max(std::abs(v1) + eos1.c, std::abs(v2) + eos2.c);
}

} // namespace bnfsi
