#include "bnfsi/path_integral.hpp"

#include <cmath>
#include <string>

namespace bnfsi {

FluidConserved SegmentPath::eval(double s, const FluidConserved& um, const FluidConserved& up) {
    return segment_eval(s, um, up);
}

FluidConserved segment_eval(double s, const FluidConserved& um, const FluidConserved& up) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("segment_eval: s = " + std::to_string(s) + " outside [0,1]");
    }
    if (s == 0.0) return um;
    if (s == 1.0) return up;
    FluidConserved u;
    u.alpha1 = um.alpha1 + s * (up.alpha1 - um.alpha1);
    u.m1 = um.m1 + s * (up.m1 - um.m1);
    u.q1 = um.q1 + s * (up.q1 - um.q1);
    u.m2 = um.m2 + s * (up.m2 - um.m2);
    u.q2 = um.q2 + s * (up.q2 - um.q2);
    return u;
}

QuadratureRule QuadratureRule::gauss_legendre(int n) {
    if (n < 1) {
        throw DomainError("gauss_legendre: node count must be positive");
    }
    // Nodes on [-1,1] via Newton iteration on P_n, then mapped to [0,1].
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

AuxVector5 path_integral_G(const FluidConserved& um, const FluidConserved& up,
                           const InterfacialParams& params, const GasEos& eos1, const GasEos& eos2,
                           const QuadratureRule& quad) {
    require_admissible(um);
    require_admissible(up);
    const PathPair p = path_integral_core(um, up, params, eos1, eos2, quad);
    return {p.pv, 0.0, p.pp, 0.0, -p.pp};
}

std::vector<AuxVector5> discrete_T(const FluidField& field, const InterfacialParams& params,
                                   const GasEos& eos1, const GasEos& eos2,
                                   const QuadratureRule& quad) {
    const std::size_t n = field.cells.size();
    if (n == 0) {
        throw DomainError("discrete_T: empty field");
    }
    AuxVector5 f_inf = fluid_flux(field.u_inf, eos1, eos2);
    std::vector<AuxVector5> t(n);
    // Suffix accumulation of the two independent path-integral scalars.
    double suf_v = 0.0;
    double suf_p = 0.0;
    for (std::size_t idx = n; idx-- > 0;) {
        if (idx + 1 < n) {
            const PathPair p = path_integral_core(field.cells[idx], field.cells[idx + 1],
                                                  params, eos1, eos2, quad);
            suf_v += p.pv;
            suf_p += p.pp;
        }
        const AuxVector5 f = fluid_flux(field.cells[idx], eos1, eos2);
        t[idx] = {f[0] - f_inf[0] - suf_v,
                  f[1] - f_inf[1],
                  f[2] - f_inf[2] - suf_p,
                  f[3] - f_inf[3],
                  f[4] - f_inf[4] + suf_p};
    }
    return t;
}

} // namespace bnfsi
