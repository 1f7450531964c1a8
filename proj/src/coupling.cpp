#include "bnfsi/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bnfsi {

namespace {

// The closed-form chain is numerically delicate: the printed rational
// functions cancel severely when alpha1 at the interface approaches one.
// All internal evaluation therefore runs in extended precision with the
// cancellation-prone subexpressions grouped so that every term carries a
// comparable physical scale. The printed formulas are recovered exactly in
// exact arithmetic.
using Real = long double;

// Shorthand bundle for the trace quantities entering the solver.
struct Vars {
    Real lam, lb;       // lambda, lambda_bar
    Real rs, cssq, k;   // rho_s, c_s^2, K = rho_s c_s^2
    Real c1sq, pi1, c2sq, pi2;
    Real w0, s0;        // solid trace
    Real a10, m10, q10, m20, q20; // fluid trace
    Real mu, nu;        // lambda m_k0 - q_k0
};

Vars unpack(const TraceStates& t, const ElasticMaterial& mat, const GasEos& e1, const GasEos& e2) {
    Vars v;
    v.lam = t.lambda;
    v.lb = t.lambda_bar;
    v.rs = mat.rho_s;
    v.cssq = static_cast<Real>(mat.c_s) * mat.c_s;
    v.k = v.rs * v.cssq;
    v.c1sq = static_cast<Real>(e1.c) * e1.c;
    v.pi1 = e1.pi;
    v.c2sq = static_cast<Real>(e2.c) * e2.c;
    v.pi2 = e2.pi;
    v.w0 = t.ubar_m1.w;
    v.s0 = t.ubar_m1.sigma;
    v.a10 = t.u0.alpha1;
    v.m10 = t.u0.m1;
    v.q10 = t.u0.q1;
    v.m20 = t.u0.m2;
    v.q20 = t.u0.q2;
    v.mu = v.lam * v.m10 - v.q10;
    v.nu = v.lam * v.m20 - v.q20;
    return v;
}

// Velocity-scale bracket shared by the denominators: D2 and the N1 factors
// equal K * bracket(x) + lambda_bar x (sigma0 - pi) [+ lambda_bar c1^2 x^2].
Real bracket_k(Real x, const Vars& v) {
    return v.lam * (x - v.m10) - v.w0 * x + v.q10;
}

Real d2_of(Real x, const Vars& v) {
    return v.k * bracket_k(x, v) + v.lb * x * (v.s0 - v.pi1);
}

Real d2_scale(Real x, const Vars& v) {
    const Real ax = std::abs(x);
    return std::abs(v.k * v.lam) * (ax + std::abs(v.m10)) + std::abs(v.k * v.w0) * ax +
           std::abs(v.k * v.q10) + std::abs(v.lb) * ax * (std::abs(v.s0) + std::abs(v.pi1));
}

// First factor of N1 (pi2 in place of pi1).
Real n1_factor1(Real x, const Vars& v) {
    return v.k * bracket_k(x, v) + v.lb * x * (v.s0 - v.pi2);
}

// Second factor of N1, equal to D2 + lambda_bar c1^2 x^2; the inner sum is
// grouped so the near-cancellation at alpha1 -> 1 happens between terms of
// pressure scale.
Real n1_factor2(Real x, const Vars& v) {
    return v.k * bracket_k(x, v) + v.lb * x * ((v.s0 - v.pi1) + v.c1sq * x);
}

constexpr Real kSingularRel = 1e-14L;

Real alpha2rho2_core(Real x, const Vars& v) {
    const Real d2 = d2_of(x, v);
    const Real d1 = x * v.lb * v.c2sq * d2;
    if (!(std::abs(d1) > kSingularRel * std::abs(x * v.lb * v.c2sq) * d2_scale(x, v)) ||
        d1 == 0.0L) {
        throw SingularDenominatorError("alpha2rho2_of_x: D1 vanishes at x = " +
                                       std::to_string(static_cast<double>(x)));
    }
    return -(n1_factor1(x, v) * n1_factor2(x, v)) / d1;
}

Real alpha1L_core(Real x, const Vars& v) {
    const Real d2 = d2_of(x, v);
    if (!(std::abs(d2) > kSingularRel * d2_scale(x, v)) || d2 == 0.0L) {
        throw SingularDenominatorError("alpha1L_of_x: D2 vanishes at x = " +
                                       std::to_string(static_cast<double>(x)));
    }
    return -(v.lb * v.c1sq * x * x) / d2;
}

struct CubicRealsResult {
    int count = 0;
    Real roots[3] = {0.0L, 0.0L, 0.0L};
};

// Closed-form real roots (trigonometric / Cardano) with Newton polish
// against the given coefficients.
CubicRealsResult cubic_reals(Real a3, Real a2, Real a1, Real a0) {
    const Real b = a2 / a3;
    const Real c = a1 / a3;
    const Real d = a0 / a3;
    // Depressed form t^3 + p t + q with x = t - b/3.
    const Real p = c - b * b / 3.0L;
    const Real q = 2.0L * b * b * b / 27.0L - b * c / 3.0L + d;
    const Real shift = -b / 3.0L;

    const Real four_p3 = 4.0L * p * p * p;
    const Real q27 = 27.0L * q * q;
    const Real disc = -four_p3 - q27; // > 0: three distinct real roots
    const Real disc_scale = std::max(std::abs(four_p3), std::abs(q27));

    CubicRealsResult res;
    if (disc > -1e-12L * disc_scale && p < 0.0L) {
        const Real m = 2.0L * std::sqrt(-p / 3.0L);
        Real arg = 3.0L * q / (p * m);
        arg = std::clamp(arg, -1.0L, 1.0L);
        const Real theta = std::acos(arg) / 3.0L;
        for (int k = 0; k < 3; ++k) {
            res.roots[res.count++] =
                shift + m * std::cos(theta - 2.0L * static_cast<Real>(M_PI) * k / 3.0L);
        }
    } else {
        Real t;
        if (p == 0.0L) {
            t = std::cbrt(-q);
        } else {
            const Real r = std::sqrt(std::max(0.0L, q * q / 4.0L + p * p * p / 27.0L));
            const Real a = -std::copysign(1.0L, q) * std::cbrt(std::abs(q) / 2.0L + r);
            t = (a == 0.0L) ? 0.0L : a - p / (3.0L * a);
        }
        res.roots[res.count++] = shift + t;
    }
    for (int i = 0; i < res.count; ++i) {
        Real& x = res.roots[i];
        for (int it = 0; it < 3; ++it) {
            const Real f = ((a3 * x + a2) * x + a1) * x + a0;
            const Real df = (3.0L * a3 * x + 2.0L * a2) * x + a1;
            if (df == 0.0L) break;
            const Real dx = f / df;
            if (!std::isfinite(static_cast<double>(dx))) break;
            x -= dx;
        }
    }
    std::sort(res.roots, res.roots + res.count);
    return res;
}

void r1_coefficients_t(const Vars& v, Real& a3, Real& a2, Real& a1, Real& a0) {
    const Real lam = v.lam, lb = v.lb, rs = v.rs, cssq = v.cssq;
    const Real c1sq = v.c1sq, pi1 = v.pi1, c2sq = v.c2sq, pi2 = v.pi2;
    const Real w0 = v.w0, s0 = v.s0;
    const Real m10 = v.m10, q10 = v.q10, m20 = v.m20, q20 = v.q20;

    a3 = ((lam - w0) * rs * ((m10 * c1sq + m20 * c2sq) * lam - q10 * c1sq - q20 * c2sq) * cssq -
          lb * ((c1sq * (pi2 - s0) * m10 + m20 * c2sq * (pi1 - s0)) * lam -
                c1sq * (pi2 - s0) * q10 - q20 * c2sq * (pi1 - s0))) *
         lb;
    a2 = (rs * rs * (lam - w0) * (lam - w0) * cssq * cssq -
          lb * rs *
              ((m10 * c1sq + m20 * c2sq - 2.0L * s0 + pi1 + pi2) * lam - q10 * c1sq +
               (-pi1 - pi2 + 2.0L * s0) * w0 - q20 * c2sq) *
              cssq +
          lb * lb * (pi2 - s0) * (pi1 - s0)) *
         (lam * m10 - q10);
    a1 = -2.0L * rs * cssq * (lam * m10 - q10) * (lam * m10 - q10) *
         (rs * (lam - w0) * cssq - lb * (pi1 + pi2 - 2.0L * s0) / 2.0L);
    a0 = rs * rs * cssq * cssq * (lam * m10 - q10) * (lam * m10 - q10) * (lam * m10 - q10);
}

void r2_coefficients_t(Real x, Real y, const Vars& v, Real& b2, Real& b1, Real& b0) {
    const Real lam = v.lam, lb = v.lb, rs = v.rs;
    const Real c1sq = v.c1sq, pi1 = v.pi1, c2sq = v.c2sq, pi2 = v.pi2;
    const Real w0 = v.w0, s0 = v.s0;
    const Real a10 = v.a10, m10 = v.m10, q10 = v.q10, m20 = v.m20, q20 = v.q20;

    b2 = -(x + y) * m20 * m10;
    b1 = (lb * rs + lam * y + lam * x) * m10 * y * m20;
    b0 = (((-pi1 + pi2) * a10 - (q10 + q20) * lam - w0 * rs * lb + s0 - pi2) * y * m20 +
          lb * rs * m20 + q20 * q20 * y + y * c2sq * m20 * m20 - m20 * lb * rs) *
             m10 * y +
         (m10 * m10 * c1sq + q10 * q10) * y * y * m20;
}

struct QuadReals {
    Real small_root;
    Real large_root;
};

QuadReals quadratic_reals(Real b2, Real b1, Real b0) {
    if (b2 == 0.0L) {
        throw DomainError("quadratic_roots: degenerate quadratic, b2 = 0");
    }
    Real disc = b1 * b1 - 4.0L * b2 * b0;
    const Real scale = std::max(b1 * b1, std::abs(4.0L * b2 * b0));
    if (disc < 0.0L) {
        if (disc >= -1e-12L * scale) {
            disc = 0.0L; // borderline double root
        } else {
            throw NoRealSolutionError("quadratic_roots: negative discriminant");
        }
    }
    const Real s = std::sqrt(disc);
    const Real qq = -0.5L * (b1 + std::copysign(s, b1));
    Real r1, r2;
    if (qq == 0.0L) {
        // b1 = 0 and disc = 0 imply b0 = 0: double root at zero.
        r1 = 0.0L;
        r2 = 0.0L;
    } else {
        r1 = qq / b2;
        r2 = b0 / qq;
    }
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

} // namespace

TraceStates make_trace_states(const ElasticState& solid_m1, const FluidConserved& fluid_0,
                              const AuxVector5& t0, double lambda, double lambda_bar,
                              const ElasticMaterial& mat) {
    if (!(lambda > 0.0) || !(lambda_bar > 0.0)) {
        throw DomainError("make_trace_states: relaxation speeds must be positive");
    }
    require_admissible(fluid_0);
    TraceStates t;
    t.ubar_m1 = solid_m1;
    t.vbar_m1 = elastic_flux(mat, solid_m1);
    t.u0 = fluid_0;
    t.v0 = t0;
    t.lambda = lambda;
    t.lambda_bar = lambda_bar;
    return t;
}

CubicCoeffs r1_coefficients(const TraceStates& t, const ElasticMaterial& mat,
                            const GasEos& eos1, const GasEos& eos2) {
    const Vars v = unpack(t, mat, eos1, eos2);
    Real a3, a2, a1, a0;
    r1_coefficients_t(v, a3, a2, a1, a0);
    CubicCoeffs c;
    c.a3 = static_cast<double>(a3);
    c.a2 = static_cast<double>(a2);
    c.a1 = static_cast<double>(a1);
    c.a0 = static_cast<double>(a0);
    return c;
}

double alpha2rho2_of_x(double x, const TraceStates& t, const ElasticMaterial& mat,
                       const GasEos& eos1, const GasEos& eos2) {
    const Vars v = unpack(t, mat, eos1, eos2);
    return static_cast<double>(alpha2rho2_core(x, v));
}

double alpha1L_of_x(double x, const TraceStates& t, const ElasticMaterial& mat,
                    const GasEos& eos1, const GasEos& eos2) {
    const Vars v = unpack(t, mat, eos1, eos2);
    const Real a = alpha1L_core(x, v);
    if (!(a > 0.0L && a < 1.0L)) {
        throw UnphysicalRootError("alpha1L_of_x: alpha1L = " +
                                  std::to_string(static_cast<double>(a)) +
                                  " outside (0,1); wrong root selected");
    }
    return static_cast<double>(a);
}

QuadCoeffs r2_coefficients(double x, double y, const TraceStates& t, const ElasticMaterial& mat,
                           const GasEos& eos1, const GasEos& eos2) {
    const Vars v = unpack(t, mat, eos1, eos2);
    Real b2, b1, b0;
    r2_coefficients_t(x, y, v, b2, b1, b0);
    QuadCoeffs q;
    q.b2 = static_cast<double>(b2);
    q.b1 = static_cast<double>(b1);
    q.b0 = static_cast<double>(b0);
    return q;
}

std::vector<double> cubic_real_roots(const CubicCoeffs& c) {
    if (c.a3 == 0.0) {
        throw DegenerateCubicError("cubic_real_roots: a3 = 0, use the quadratic solver");
    }
    const CubicRealsResult res = cubic_reals(c.a3, c.a2, c.a1, c.a0);
    std::vector<double> out(res.count);
    for (int i = 0; i < res.count; ++i) {
        out[i] = static_cast<double>(res.roots[i]);
    }
    return out;
}

std::pair<double, double> quadratic_roots(const QuadCoeffs& c) {
    const QuadReals r = quadratic_reals(c.b2, c.b1, c.b0);
    return {static_cast<double>(r.small_root), static_cast<double>(r.large_root)};
}

CouplingStates solve_coupling(const TraceStates& t, const ElasticMaterial& mat,
                              const GasEos& eos1, const GasEos& eos2, SolveDiagnostics* diag) {
    const Vars v = unpack(t, mat, eos1, eos2);
    Real a3, a2, a1, a0;
    r1_coefficients_t(v, a3, a2, a1, a0);
    if (a3 == 0.0L) {
        throw SolverFailureError("solve_coupling: degenerate cubic (a3 = 0)", t);
    }
    const CubicRealsResult roots = cubic_reals(a3, a2, a1, a0);
    if (roots.count < 3) {
        throw SolverFailureError("solve_coupling: R1 has fewer than 3 real roots", t);
    }
    Real x = roots.roots[1];

    if (diag != nullptr) {
        diag->n_real_roots = roots.count;
        diag->roots = {static_cast<double>(roots.roots[0]), static_cast<double>(roots.roots[1]),
                       static_cast<double>(roots.roots[2])};
        diag->x1_negative = roots.roots[0] < 0.0L;
        try {
            const Real a_x3 = alpha1L_core(roots.roots[2], v);
            diag->x3_unphysical = !(a_x3 > 0.0L && a_x3 < 1.0L);
        } catch (const SingularDenominatorError&) {
            diag->x3_unphysical = true;
        }
    }

    // The middle root is hypersensitive when the upper two roots nearly
    // coincide; refine it on the velocity-condition mismatch
    // G(x) = [alpha2 rho2]_L(x) mu - nu x, whose roots are those of R1.
    try {
        auto g_of = [&](Real xx) { return alpha2rho2_core(xx, v) * v.mu - v.nu * xx; };
        for (int it = 0; it < 2; ++it) {
            const Real g0 = g_of(x);
            const Real h = x * 1e-7L + 1e-30L;
            const Real g1 = g_of(x + h);
            const Real dg = (g1 - g0) / h;
            if (dg == 0.0L) break;
            const Real step = g0 / dg;
            if (!(std::abs(step) < 0.5L * std::abs(x))) break;
            x -= step;
        }
    } catch (const SingularDenominatorError&) {
        // Keep the polynomial root if the refinement probes a pole.
    }

    Real y, a1l;
    try {
        y = alpha2rho2_core(x, v);
        a1l = alpha1L_core(x, v);
    } catch (const std::runtime_error& e) {
        throw SolverFailureError(std::string("solve_coupling: ") + e.what(), t);
    }
    if (!(a1l > 0.0L && a1l < 1.0L)) {
        throw SolverFailureError("solve_coupling: alpha1L = " +
                                     std::to_string(static_cast<double>(a1l)) + " outside (0,1)",
                                 t);
    }
    if (!(x > 0.0L) || !(y > 0.0L)) {
        throw SolverFailureError("solve_coupling: negative interface mass", t);
    }
    const Real sigma_r = (v.pi1 * a1l - v.c1sq * x) / a1l;

    Real b2, b1, b0;
    r2_coefficients_t(x, y, v, b2, b1, b0);
    QuadReals zr;
    try {
        zr = quadratic_reals(b2, b1, b0);
    } catch (const std::runtime_error& e) {
        throw SolverFailureError(std::string("solve_coupling: ") + e.what(), t);
    }
    if (diag != nullptr) {
        diag->quad_root_small = static_cast<double>(zr.small_root);
        diag->quad_root_large = static_cast<double>(zr.large_root);
    }
    const Real z = zr.small_root;
    const Real w_r = z / y;
    const Real q1l = w_r * x;

    CouplingStates cs;
    cs.ubar_R = {static_cast<double>(w_r), static_cast<double>(sigma_r)};
    cs.u_L = {static_cast<double>(a1l), static_cast<double>(x), static_cast<double>(q1l),
              static_cast<double>(y), static_cast<double>(z)};
    if (!is_admissible(cs.u_L)) {
        throw SolverFailureError("solve_coupling: inadmissible interface fluid state", t);
    }
    cs.vbar_R = {t.vbar_m1[0] + t.lambda_bar * (t.ubar_m1.w - cs.ubar_R.w),
                 t.vbar_m1[1] + t.lambda_bar * (t.ubar_m1.sigma - cs.ubar_R.sigma)};
    cs.v_L = {t.v0[0] + t.lambda * (cs.u_L.alpha1 - t.u0.alpha1),
              t.v0[1] + t.lambda * (cs.u_L.m1 - t.u0.m1),
              t.v0[2] + t.lambda * (cs.u_L.q1 - t.u0.q1),
              t.v0[3] + t.lambda * (cs.u_L.m2 - t.u0.m2),
              t.v0[4] + t.lambda * (cs.u_L.q2 - t.u0.q2)};
    return cs;
}

std::array<double, 7> coupling_residuals(const CouplingStates& cs, const TraceStates& t,
                                         const ElasticMaterial& mat,
                                         const GasEos& eos1, const GasEos& eos2) {
    const Real cs2 = static_cast<Real>(mat.c_s) * mat.c_s;
    const Real vscale = 1.0L / mat.c_s;
    const Real sscale = 1.0L / (mat.rho_s * cs2);

    const Real w_r = cs.ubar_R.w;
    const Real sigma_r = cs.ubar_R.sigma;
    const Real m1l = cs.u_L.m1, q1l = cs.u_L.q1, m2l = cs.u_L.m2, q2l = cs.u_L.q2;
    const Real a1l = cs.u_L.alpha1;
    const Real v1l = q1l / m1l;
    const Real v2l = q2l / m2l;
    const Real p1l = static_cast<Real>(eos1.c) * eos1.c * (m1l / a1l) - eos1.pi;
    const Real p2l = static_cast<Real>(eos2.c) * eos2.c * (m2l / (1.0L - a1l)) - eos2.pi;

    const Real m10 = t.u0.m1, q10 = t.u0.q1, m20 = t.u0.m2, q20 = t.u0.q2;
    const Real a10 = t.u0.alpha1;
    const Real v10 = q10 / m10;
    const Real v20 = q20 / m20;
    const Real p10 = static_cast<Real>(eos1.c) * eos1.c * (m10 / a10) - eos1.pi;
    const Real p20 = static_cast<Real>(eos2.c) * eos2.c * (m20 / (1.0L - a10)) - eos2.pi;

    std::array<double, 7> r;
    r[0] = static_cast<double>((w_r - v1l) * vscale);
    r[1] = static_cast<double>((w_r - v2l) * vscale);
    r[2] = static_cast<double>((sigma_r + p1l) * sscale);
    r[3] = static_cast<double>((sigma_r + p2l) * sscale);

    // Velocity conditions with w reconstructed from V^sigma_R and the phase
    // velocities reconstructed from the mass components of V_L.
    const Real w_from_v = -static_cast<Real>(cs.vbar_R[1]) / (cs2 * mat.rho_s);
    r[4] = static_cast<double>(
        (w_from_v - (static_cast<Real>(cs.v_L[1]) - t.v0[1] + q10) / m1l) * vscale);
    r[5] = static_cast<double>(
        (w_from_v - (static_cast<Real>(cs.v_L[3]) - t.v0[3] + q20) / m2l) * vscale);

    // Stress condition with sigma reconstructed from V^w_R; the path
    // integral contributions of the two phases cancel in the sum.
    const Real sigma_from_v = -static_cast<Real>(mat.rho_s) * cs.vbar_R[0];
    Real sum = 0.0L;
    sum += static_cast<Real>(cs.v_L[2]) - t.v0[2] + m10 * v10 * v10 + a10 * p10 - m1l * v1l * v1l;
    sum += static_cast<Real>(cs.v_L[4]) - t.v0[4] + m20 * v20 * v20 + (1.0L - a10) * p20 -
           m2l * v2l * v2l;
    r[6] = static_cast<double>((sigma_from_v + sum) * sscale);
    return r;
}

} // namespace bnfsi
