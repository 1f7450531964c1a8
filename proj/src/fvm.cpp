#include "bnfsi/fvm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>

namespace bnfsi {

namespace {

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

const ElasticState& solid_at(const CoupledField& field, int j) {
    // Paper indexing j in [-n_solid, -1]; out-of-range indices are closed by
    // copying the nearest subdomain end state.
    const int n = static_cast<int>(field.solid.size());
    return field.solid[static_cast<std::size_t>(clamp_index(j + n, n))];
}

const FluidConserved& fluid_at(const CoupledField& field, int j) {
    const int n = static_cast<int>(field.fluid.size());
    return field.fluid[static_cast<std::size_t>(clamp_index(j, n))];
}

const AuxVector5& t_at(const std::vector<AuxVector5>& t_op, int j) {
    const int n = static_cast<int>(t_op.size());
    return t_op[static_cast<std::size_t>(clamp_index(j, n))];
}

} // namespace

double compute_dt(const CoupledField& field, const Grid& grid, const TimeControl& tc,
                  const ElasticMaterial& mat, const GasEos& eos1, const GasEos& eos2,
                  double fixed_lambda) {
    const double lambda_bar = elastic_wave_bound(mat);
    double dt;
    if (tc.mode == TimeControl::Mode::parabolic_study) {
        if (!(lambda_bar > 0.0)) {
            throw DomainError("compute_dt: zero solid wave speed");
        }
        dt = tc.cfl * grid.dx * grid.dx / lambda_bar;
    } else {
        double lambda = fixed_lambda;
        if (lambda <= 0.0) {
            lambda = 0.0;
            for (const FluidConserved& u : field.fluid) {
                lambda = std::max(lambda, fluid_wave_bound(u, eos1, eos2));
            }
        }
        const double speed = std::max(lambda_bar, lambda);
        if (!(speed > 0.0)) {
            throw DomainError("compute_dt: zero wave speed");
        }
        dt = tc.cfl * grid.dx / speed;
    }
    const double remaining = tc.t_end - field.time;
    if (remaining > 0.0 && dt >= remaining * (1.0 - 1e-12)) {
        dt = remaining;
    }
    return dt;
}

std::pair<AuxVector2, AuxVector2> solid_slopes(const CoupledField& field, const Grid& grid,
                                               int j, const ElasticMaterial& mat) {
    const double lb = elastic_wave_bound(mat);
    const double inv2dx = 1.0 / (2.0 * grid.dx);
    const AuxVector2 fm = elastic_flux(mat, solid_at(field, j - 1));
    const AuxVector2 fc = elastic_flux(mat, solid_at(field, j));
    const AuxVector2 fp = elastic_flux(mat, solid_at(field, j + 1));
    const ElasticState& um = solid_at(field, j - 1);
    const ElasticState& uc = solid_at(field, j);
    const ElasticState& up = solid_at(field, j + 1);
    const double dul[2] = {uc.w - um.w, uc.sigma - um.sigma};
    const double dur[2] = {up.w - uc.w, up.sigma - uc.sigma};
    AuxVector2 sminus, splus;
    for (int k = 0; k < 2; ++k) {
        const double dfl = fc[k] - fm[k];
        const double dfr = fp[k] - fc[k];
        sminus[k] = minmod((dfl - lb * dul[k]) * inv2dx, (dfr - lb * dur[k]) * inv2dx);
        splus[k] = minmod((dfl + lb * dul[k]) * inv2dx, (dfr + lb * dur[k]) * inv2dx);
    }
    return {sminus, splus};
}

std::pair<AuxVector5, AuxVector5> fluid_slopes(const CoupledField& field, const Grid& grid,
                                               const std::vector<AuxVector5>& t_op, int j,
                                               double lambda) {
    const double inv2dx = 1.0 / (2.0 * grid.dx);
    const AuxVector5& tm = t_at(t_op, j - 1);
    const AuxVector5& tc = t_at(t_op, j);
    const AuxVector5& tp = t_at(t_op, j + 1);
    const FluidConserved& um = fluid_at(field, j - 1);
    const FluidConserved& uc = fluid_at(field, j);
    const FluidConserved& up = fluid_at(field, j + 1);
    const double ul[5] = {uc.alpha1 - um.alpha1, uc.m1 - um.m1, uc.q1 - um.q1, uc.m2 - um.m2,
                          uc.q2 - um.q2};
    const double ur[5] = {up.alpha1 - uc.alpha1, up.m1 - uc.m1, up.q1 - uc.q1, up.m2 - uc.m2,
                          up.q2 - uc.q2};
    AuxVector5 sminus, splus;
    for (int k = 0; k < 5; ++k) {
        const double dfl = tc[k] - tm[k];
        const double dfr = tp[k] - tc[k];
        sminus[k] = minmod((dfl - lambda * ul[k]) * inv2dx, (dfr - lambda * ur[k]) * inv2dx);
        splus[k] = minmod((dfl + lambda * ul[k]) * inv2dx, (dfr + lambda * ur[k]) * inv2dx);
    }
    return {sminus, splus};
}

AuxVector2 interior_flux_solid(const CoupledField& field, const Grid& grid, int j,
                               const ElasticMaterial& mat, double lambda_bar) {
    const ElasticState& um = solid_at(field, j - 1);
    const ElasticState& uc = solid_at(field, j);
    const AuxVector2 fm = elastic_flux(mat, um);
    const AuxVector2 fc = elastic_flux(mat, uc);
    const AuxVector2 sm_prev = solid_slopes(field, grid, j - 1, mat).second;
    const AuxVector2 sm_here = solid_slopes(field, grid, j, mat).first;
    AuxVector2 h;
    const double du[2] = {uc.w - um.w, uc.sigma - um.sigma};
    for (int k = 0; k < 2; ++k) {
        h[k] = 0.5 * (fm[k] + fc[k]) - 0.5 * lambda_bar * du[k] -
               0.5 * grid.dx * (sm_here[k] - sm_prev[k]);
    }
    return h;
}

AuxVector5 interior_flux_fluid(const CoupledField& field, const Grid& grid,
                               const std::vector<AuxVector5>& t_op, int j, double lambda) {
    const FluidConserved& um = fluid_at(field, j - 1);
    const FluidConserved& uc = fluid_at(field, j);
    const AuxVector5& tm = t_at(t_op, j - 1);
    const AuxVector5& tc = t_at(t_op, j);
    const AuxVector5 sp_prev = fluid_slopes(field, grid, t_op, j - 1, lambda).second;
    const AuxVector5 sm_here = fluid_slopes(field, grid, t_op, j, lambda).first;
    const double du[5] = {uc.alpha1 - um.alpha1, uc.m1 - um.m1, uc.q1 - um.q1, uc.m2 - um.m2,
                          uc.q2 - um.q2};
    AuxVector5 h;
    for (int k = 0; k < 5; ++k) {
        h[k] = 0.5 * (tm[k] + tc[k]) - 0.5 * lambda * du[k] -
               0.5 * grid.dx * (sm_here[k] - sp_prev[k]);
    }
    return h;
}

std::pair<AuxVector2, AuxVector5> interface_fluxes(const CouplingStates& cs, const TraceStates& t,
                                                   const ElasticMaterial& mat, double lambda,
                                                   double lambda_bar) {
    const AuxVector2 fbar = elastic_flux(mat, t.ubar_m1);
    AuxVector2 left;
    left[0] = 0.5 * (fbar[0] + cs.vbar_R[0]) - 0.5 * lambda_bar * (cs.ubar_R.w - t.ubar_m1.w);
    left[1] = 0.5 * (fbar[1] + cs.vbar_R[1]) - 0.5 * lambda_bar * (cs.ubar_R.sigma - t.ubar_m1.sigma);
    AuxVector5 right;
    const double du[5] = {t.u0.alpha1 - cs.u_L.alpha1, t.u0.m1 - cs.u_L.m1, t.u0.q1 - cs.u_L.q1,
                          t.u0.m2 - cs.u_L.m2, t.u0.q2 - cs.u_L.q2};
    for (int k = 0; k < 5; ++k) {
        right[k] = 0.5 * (cs.v_L[k] + t.v0[k]) - 0.5 * lambda * du[k];
    }
    return {left, right};
}

FluidConserved velocity_projection(const FluidConserved& u) {
    FluidConserved r = u;
    velocity_projection_core(u.m1, u.q1, u.m2, u.q2, r.q1, r.q2);
    return r;
}

double equilibrium_alpha(double m1, double m2, const GasEos& eos1, const GasEos& eos2) {
    const double c1m = eos1.c * eos1.c * m1;
    const double c2m = eos2.c * eos2.c * m2;
    const double a = eos1.pi - eos2.pi;
    double alpha;
    if (a == 0.0) {
        alpha = c1m / (c1m + c2m);
    } else {
        // Root in (0,1) of a alpha^2 + b alpha + c = 0, the cleared form of
        // p1(m1/alpha) = p2(m2/(1-alpha)).
        const double b = -(a + c1m + c2m);
        const double c = c1m;
        double disc = b * b - 4.0 * a * c;
        disc = std::max(disc, 0.0);
        const double s = std::sqrt(disc);
        const double qq = -0.5 * (b + std::copysign(s, b));
        const double r1 = qq / a;
        const double r2 = c / qq;
        if (r1 > 0.0 && r1 < 1.0) {
            alpha = r1;
        } else if (r2 > 0.0 && r2 < 1.0) {
            alpha = r2;
        } else {
            // Fall back to bisection on the monotone pressure difference.
            double lo = kAlphaMargin, hi = 1.0 - kAlphaMargin;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f = c1m / mid - c2m / (1.0 - mid) - a;
                (f > 0.0 ? lo : hi) = mid;
            }
            alpha = 0.5 * (lo + hi);
        }
    }
    // Two Newton steps sharpen the root, then one extended-precision step
    // removes the double-rounding floor of the stiffened-gas offsets.
    for (int it = 0; it < 2; ++it) {
        const double om = 1.0 - alpha;
        const double f = c1m / alpha - c2m / om - a;
        const double df = -c1m / (alpha * alpha) - c2m / (om * om);
        const double delta = f / df;
        const double next = alpha - delta;
        if (next > 0.0 && next < 1.0) alpha = next;
    }
    {
        const long double al = alpha;
        const long double om = 1.0L - al;
        const long double f = static_cast<long double>(c1m) / al -
                              static_cast<long double>(c2m) / om - static_cast<long double>(a);
        const long double df = -static_cast<long double>(c1m) / (al * al) -
                               static_cast<long double>(c2m) / (om * om);
        const double next = static_cast<double>(al - f / df);
        if (next > 0.0 && next < 1.0) alpha = next;
    }
    return alpha;
}

FluidConserved pressure_projection(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2) {
    FluidConserved r = u;
    r.alpha1 = equilibrium_alpha(u.m1, u.m2, eos1, eos2);
    return r;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(const CoupledField& initial, const SchemeParams& params) : params_(params) {
    ns_ = static_cast<int>(initial.solid.size());
    nf_ = static_cast<int>(initial.fluid.size());
    dx_ = params.grid.dx;
    if (ns_ < 1 || nf_ < 1 || !(dx_ > 0.0)) {
        throw DomainError("Engine: need at least one cell per side and dx > 0");
    }
    if (params.grid.n_solid != ns_ || params.grid.n_fluid != nf_) {
        throw DomainError("Engine: grid does not match field");
    }
    time_ = initial.time;
    lambda_bar_ = elastic_wave_bound(params_.mat);

    sw_.assign(ns_ + 4, 0.0);
    ss_.assign(ns_ + 4, 0.0);
    sfw_.assign(ns_ + 4, 0.0);
    sfs_.assign(ns_ + 4, 0.0);
    for (int k = 0; k < 2; ++k) {
        seqp_[k].assign(ns_ + 3, 0.0);
        seqm_[k].assign(ns_ + 3, 0.0);
        sflx_[k].assign(ns_ + 1, 0.0);
    }
    for (int k = 0; k < 5; ++k) {
        fu_[k].assign(nf_ + 4, 0.0);
        ff_[k].assign(nf_ + 4, 0.0);
        ft_[k].assign(nf_ + 4, 0.0);
        feqp_[k].assign(nf_ + 3, 0.0);
        feqm_[k].assign(nf_ + 3, 0.0);
        fflx_[k].assign(nf_ + 1, 0.0);
    }
    pv_.assign(nf_, 0.0);
    pp_.assign(nf_, 0.0);

    for (int i = 0; i < ns_; ++i) {
        sw_[i + 2] = initial.solid[i].w;
        ss_[i + 2] = initial.solid[i].sigma;
    }
    for (int j = 0; j < nf_; ++j) {
        const FluidConserved& u = initial.fluid[j];
        require_admissible(u);
        fu_[0][j + 2] = u.alpha1;
        fu_[1][j + 2] = u.m1;
        fu_[2][j + 2] = u.q1;
        fu_[3][j + 2] = u.m2;
        fu_[4][j + 2] = u.q2;
    }
}

CoupledField Engine::field() const {
    CoupledField f;
    f.time = time_;
    f.solid.resize(ns_);
    f.fluid.resize(nf_);
    for (int i = 0; i < ns_; ++i) {
        f.solid[i] = {sw_[i + 2], ss_[i + 2]};
    }
    for (int j = 0; j < nf_; ++j) {
        f.fluid[j] = {fu_[0][j + 2], fu_[1][j + 2], fu_[2][j + 2], fu_[3][j + 2], fu_[4][j + 2]};
    }
    return f;
}

void Engine::fill_ghosts() {
    sw_[1] = sw_[0] = sw_[2];
    ss_[1] = ss_[0] = ss_[2];
    sw_[ns_ + 2] = sw_[ns_ + 3] = sw_[ns_ + 1];
    ss_[ns_ + 2] = ss_[ns_ + 3] = ss_[ns_ + 1];
    for (int k = 0; k < 5; ++k) {
        fu_[k][1] = fu_[k][0] = fu_[k][2];
        fu_[k][nf_ + 2] = fu_[k][nf_ + 3] = fu_[k][nf_ + 1];
    }
}

namespace {

struct BadCell {
    std::atomic<long> index{-1}; // encoded: fluid cell j (>= 0)
};

} // namespace

void Engine::step(double dt) {
    fill_ghosts();

    const int ns = ns_;
    const int nf = nf_;
    const double dx = dx_;
    const double rho_s = params_.mat.rho_s;
    const double cs2 = params_.mat.c_s * params_.mat.c_s;
    const GasEos e1 = params_.eos1;
    const GasEos e2 = params_.eos2;
    const InterfacialParams ip = params_.iparams;
    const QuadratureRule& quad = params_.quad;
    const AuxVector5 shift = params_.far_field_flux_shift;
    const bool relax = params_.relax == RelaxationMode::instantaneous;

    double* __restrict a = fu_[0].data();
    double* __restrict m1 = fu_[1].data();
    double* __restrict q1 = fu_[2].data();
    double* __restrict m2 = fu_[3].data();
    double* __restrict q2 = fu_[4].data();

    double lam_max = 0.0;
    BadCell bad;
    std::exception_ptr solver_error;

#pragma omp parallel
    {
        // --- solid physical flux (incl. ghosts) and fluid flux + wave bound
        const double kbar = rho_s * cs2;
#pragma omp for schedule(static) nowait
        for (int i = 0; i < ns + 4; ++i) {
            sfw_[i] = -ss_[i] / rho_s;
            sfs_[i] = -kbar * sw_[i];
        }
#pragma omp for schedule(static) reduction(max : lam_max)
        for (int j = 0; j < nf; ++j) {
            const int i = j + 2;
            const double v1 = q1[i] / m1[i];
            const double v2 = q2[i] / m2[i];
            ff_[0][i] = 0.0;
            ff_[1][i] = q1[i];
            ff_[2][i] = q1[i] * v1 + (e1.c * e1.c * m1[i] - a[i] * e1.pi);
            ff_[3][i] = q2[i];
            ff_[4][i] = q2[i] * v2 + (e2.c * e2.c * m2[i] - (1.0 - a[i]) * e2.pi);
            lam_max = std::max(lam_max, std::max(std::abs(v1) + e1.c, std::abs(v2) + e2.c));
        }

        // --- path integrals on interior fluid edges
#pragma omp for schedule(static)
        for (int j = 0; j < nf - 1; ++j) {
            const int i = j + 2;
            const PathPair p = path_integral_core(a[i], m1[i], q1[i], m2[i], q2[i], a[i + 1],
                                                  m1[i + 1], q1[i + 1], m2[i + 1], q2[i + 1], ip,
                                                  e1, e2, quad);
            pv_[j] = p.pv;
            pp_[j] = p.pp;
        }

#pragma omp single
        {
            if (params_.fixed_lambda > 0.0) {
                if (lam_max > params_.fixed_lambda) {
                    try {
                        throw DomainError("Engine: fixed lambda " +
                                          std::to_string(params_.fixed_lambda) +
                                          " violates the subcharacteristic bound " +
                                          std::to_string(lam_max) + " at t = " +
                                          std::to_string(time_));
                    } catch (...) {
                        solver_error = std::current_exception();
                    }
                }
                lambda_ = params_.fixed_lambda;
            } else {
                lambda_ = lam_max;
            }
            // Suffix sums of the path integrals, right to left.
            pv_[nf - 1] = 0.0;
            pp_[nf - 1] = 0.0;
            for (int j = nf - 2; j >= 0; --j) {
                pv_[j] += pv_[j + 1];
                pp_[j] += pp_[j + 1];
            }
        }

        // --- discretized nonlocal operator T per fluid cell
        {
            const int last = nf + 1;
            const double f1_inf = ff_[1][last] + shift[1];
            const double f2_inf = ff_[2][last] + shift[2];
            const double f3_inf = ff_[3][last] + shift[3];
            const double f4_inf = ff_[4][last] + shift[4];
            const double f0_inf = shift[0];
#pragma omp for schedule(static)
            for (int j = 0; j < nf; ++j) {
                const int i = j + 2;
                ft_[0][i] = -f0_inf - pv_[j];
                ft_[1][i] = ff_[1][i] - f1_inf;
                ft_[2][i] = ff_[2][i] - f2_inf - pp_[j];
                ft_[3][i] = ff_[3][i] - f3_inf;
                ft_[4][i] = ff_[4][i] - f4_inf + pp_[j];
            }
        }

#pragma omp single
        {
            for (int k = 0; k < 5; ++k) {
                ft_[k][1] = ft_[k][0] = ft_[k][2];
                ft_[k][nf + 2] = ft_[k][nf + 3] = ft_[k][nf + 1];
            }
            // Interface Riemann solve on the trace states of this step.
            try {
                last_traces_ = TraceStates{{sw_[ns + 1], ss_[ns + 1]},
                                           {sfw_[ns + 1], sfs_[ns + 1]},
                                           {a[2], m1[2], q1[2], m2[2], q2[2]},
                                           {ft_[0][2], ft_[1][2], ft_[2][2], ft_[3][2], ft_[4][2]},
                                           lambda_,
                                           lambda_bar_};
                last_cs_ = solve_coupling(last_traces_, params_.mat, e1, e2);
                if (params_.residual_check_interval > 0 &&
                    step_count_ % params_.residual_check_interval == 0) {
                    const std::array<double, 7> r =
                        coupling_residuals(last_cs_, last_traces_, params_.mat, e1, e2);
                    for (double v : r) {
                        if (!(std::abs(v) <= 1e-9)) {
                            throw SolverFailureError(
                                "interface residual " + std::to_string(v) + " exceeds 1e-9 at t = " +
                                    std::to_string(time_),
                                last_traces_);
                        }
                    }
                }
                const auto [lf, rf] = interface_fluxes(last_cs_, last_traces_, params_.mat,
                                                       lambda_, lambda_bar_);
                sflx_[0][ns] = lf[0];
                sflx_[1][ns] = lf[1];
                for (int k = 0; k < 5; ++k) {
                    fflx_[k][0] = rf[k];
                }
            } catch (...) {
                solver_error = std::current_exception();
            }
        }

        // --- characteristic difference quotients on edges
        const double inv2dx = 1.0 / (2.0 * dx);
        const double lam = lambda_;
        const double lb = lambda_bar_;
#pragma omp for schedule(static) nowait
        for (int e = 0; e <= ns; ++e) {
            const int i = e + 2; // right cell of the edge
            for (int k = 0; k < 2; ++k) {
                const double* f = (k == 0) ? sfw_.data() : sfs_.data();
                const double* u = (k == 0) ? sw_.data() : ss_.data();
                const double df = f[i] - f[i - 1];
                const double du = u[i] - u[i - 1];
                seqp_[k][e + 1] = (df + lb * du) * inv2dx;
                seqm_[k][e + 1] = (df - lb * du) * inv2dx;
            }
        }
#pragma omp for schedule(static)
        for (int e = 0; e <= nf; ++e) {
            const int i = e + 2;
            for (int k = 0; k < 5; ++k) {
                const double df = ft_[k][i] - ft_[k][i - 1];
                const double du = fu_[k][i] - fu_[k][i - 1];
                feqp_[k][e + 1] = (df + lam * du) * inv2dx;
                feqm_[k][e + 1] = (df - lam * du) * inv2dx;
            }
        }

        // --- MUSCL fluxes on interior and outer edges (interface edges were
        // set from the coupling states above)
#pragma omp for schedule(static) nowait
        for (int e = 0; e < ns; ++e) {
            const int i = e + 2;
            for (int k = 0; k < 2; ++k) {
                const double* f = (k == 0) ? sfw_.data() : sfs_.data();
                const double* u = (k == 0) ? sw_.data() : ss_.data();
                const double s_minus = minmod(seqm_[k][e + 1], seqm_[k][e + 2]);
                const double s_plus = minmod(seqp_[k][e], seqp_[k][e + 1]);
                sflx_[k][e] = 0.5 * (f[i - 1] + f[i]) - 0.5 * lb * (u[i] - u[i - 1]) -
                              0.5 * dx * (s_minus - s_plus);
            }
        }
#pragma omp for schedule(static)
        for (int e = 1; e <= nf; ++e) {
            const int i = e + 2;
            for (int k = 0; k < 5; ++k) {
                const double s_minus = minmod(feqm_[k][e + 1], feqm_[k][e + 2]);
                const double s_plus = minmod(feqp_[k][e], feqp_[k][e + 1]);
                fflx_[k][e] = 0.5 * (ft_[k][i - 1] + ft_[k][i]) -
                              0.5 * lam * (fu_[k][i] - fu_[k][i - 1]) -
                              0.5 * dx * (s_minus - s_plus);
            }
        }

        // --- conservative update and relaxation projections
        const double r = dt / dx;
#pragma omp for schedule(static) nowait
        for (int i = 0; i < ns; ++i) {
            sw_[i + 2] -= r * (sflx_[0][i + 1] - sflx_[0][i]);
            ss_[i + 2] -= r * (sflx_[1][i + 1] - sflx_[1][i]);
        }
#pragma omp for schedule(static)
        for (int j = 0; j < nf; ++j) {
            const int i = j + 2;
            double na = a[i] - r * (fflx_[0][j + 1] - fflx_[0][j]);
            const double nm1 = m1[i] - r * (fflx_[1][j + 1] - fflx_[1][j]);
            double nq1 = q1[i] - r * (fflx_[2][j + 1] - fflx_[2][j]);
            const double nm2 = m2[i] - r * (fflx_[3][j + 1] - fflx_[3][j]);
            double nq2 = q2[i] - r * (fflx_[4][j + 1] - fflx_[4][j]);
            bool ok = std::isfinite(na) && std::isfinite(nm1) && std::isfinite(nq1) &&
                      std::isfinite(nm2) && std::isfinite(nq2) && na >= kAlphaMargin &&
                      na <= 1.0 - kAlphaMargin && nm1 > 0.0 && nm2 > 0.0;
            if (ok && relax) {
                velocity_projection_core(nm1, nq1, nm2, nq2, nq1, nq2);
                na = equilibrium_alpha(nm1, nm2, e1, e2);
                ok = na >= kAlphaMargin && na <= 1.0 - kAlphaMargin;
            }
            if (!ok) {
                long expected = -1;
                bad.index.compare_exchange_strong(expected, j);
            }
            a[i] = na;
            m1[i] = nm1;
            q1[i] = nq1;
            m2[i] = nm2;
            q2[i] = nq2;
        }
    } // omp parallel

    if (solver_error) {
        std::rethrow_exception(solver_error);
    }
    if (bad.index.load() >= 0) {
        throw InvalidStateError("step: inadmissible state in fluid cell " +
                                std::to_string(bad.index.load()) + " after update at t = " +
                                std::to_string(time_));
    }
    time_ += dt;
    ++step_count_;
}

double Engine::plan_dt(const TimeControl& tc) const {
    // dt depends on the per-step lambda; obtain it from a cheap bound pass
    // over the current field (identical to the bound the fluxes will use).
    double dt;
    if (tc.mode == TimeControl::Mode::parabolic_study) {
        dt = tc.cfl * dx_ * dx_ / lambda_bar_;
    } else {
        double lam = params_.fixed_lambda;
        if (lam <= 0.0) {
            lam = 0.0;
            const double* m1 = fu_[1].data();
            const double* q1 = fu_[2].data();
            const double* m2 = fu_[3].data();
            const double* q2 = fu_[4].data();
            const double c1 = params_.eos1.c;
            const double c2 = params_.eos2.c;
            const int nf = nf_;
#pragma omp parallel for schedule(static) reduction(max : lam)
            for (int j = 0; j < nf; ++j) {
                const int i = j + 2;
                const double v1 = std::abs(q1[i] / m1[i]) + c1;
                const double v2 = std::abs(q2[i] / m2[i]) + c2;
                lam = std::max(lam, std::max(v1, v2));
            }
        }
        dt = tc.cfl * dx_ / std::max(lambda_bar_, lam);
    }
    const double remaining = tc.t_end - time_;
    if (remaining > 0.0 && dt >= remaining * (1.0 - 1e-12)) {
        dt = remaining;
    }
    return dt;
}

double Engine::advance(const TimeControl& tc) {
    const double dt = plan_dt(tc);
    step(dt);
    return dt;
}

AuxVector5 Engine::last_fluid_edge_flux(int e) const {
    if (e < 0 || e > nf_) throw DomainError("last_fluid_edge_flux: edge out of range");
    return {fflx_[0][e], fflx_[1][e], fflx_[2][e], fflx_[3][e], fflx_[4][e]};
}

AuxVector2 Engine::last_solid_edge_flux(int e) const {
    if (e < 0 || e > ns_) throw DomainError("last_solid_edge_flux: edge out of range");
    return {sflx_[0][e], sflx_[1][e]};
}

CoupledField step(const CoupledField& field, const SchemeParams& params, double dt) {
    Engine engine(field, params);
    engine.step(dt);
    return engine.field();
}

} // namespace bnfsi
