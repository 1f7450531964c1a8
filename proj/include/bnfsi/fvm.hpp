#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "bnfsi/coupling.hpp"
#include "bnfsi/path_integral.hpp"
#include "bnfsi/states.hpp"

namespace bnfsi {

/// Uniform mesh with the material interface at x = 0: cells j < 0 carry the
/// solid, cells j >= 0 the fluid. Both subdomains share the same cell width.
struct Grid {
    int n_solid = 0;
    int n_fluid = 0;
    double dx = 0.0;

    double solid_center(int i) const { return -(n_solid - i - 0.5) * dx; } // i in [0, n_solid)
    double fluid_center(int j) const { return (j + 0.5) * dx; }            // j in [0, n_fluid)
};

struct TimeControl {
    enum class Mode { hyperbolic, parabolic_study };
    double cfl = 0.2;
    Mode mode = Mode::hyperbolic;
    double t_end = 0.0;
};

enum class RelaxationMode { instantaneous, none };

/// Discrete coupled state: solid cell averages left of the interface,
/// fluid cell averages right of it.
struct CoupledField {
    std::vector<ElasticState> solid; // index i corresponds to cell j = i - n_solid
    std::vector<FluidConserved> fluid;
    double time = 0.0;
};

/// Everything the scheme needs besides the field itself.
struct SchemeParams {
    Grid grid;
    ElasticMaterial mat{};
    GasEos eos1{};
    GasEos eos2{};
    InterfacialParams iparams{};
    QuadratureRule quad = QuadratureRule::gauss_legendre(3);
    RelaxationMode relax = RelaxationMode::instantaneous;
    // 0 = recompute the fluid relaxation speed every step from the field;
    // > 0 = use this fixed value (aborts if the subcharacteristic bound is
    // violated).
    double fixed_lambda = 0.0;
    // Constant shift added to F(U_inf); the scheme is invariant under it.
    AuxVector5 far_field_flux_shift{0.0, 0.0, 0.0, 0.0, 0.0};
    // Interface residuals are verified every this many solves (1 in debug
    // builds). 0 disables the check.
#ifdef NDEBUG
    int residual_check_interval = 100;
#else
    int residual_check_interval = 1;
#endif
};

// Time step: CFL dx / max(lambda_bar, lambda) in hyperbolic mode,
// CFL dx^2 / lambda_bar in the parabolic grid-study mode; clipped so the
// final step lands exactly on t_end.
double compute_dt(const CoupledField& field, const Grid& grid, const TimeControl& tc,
                  const ElasticMaterial& mat, const GasEos& eos1, const GasEos& eos2,
                  double fixed_lambda = 0.0);

// 0 on sign disagreement, otherwise the argument of smaller magnitude
// (a on ties).
inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return a <= b ? a : b;
    if (a < 0.0 && b < 0.0) return a >= b ? a : b;
    return 0.0;
}

// Characteristic MUSCL slopes of cell j (paper indexing: solid j in
// [-n_solid, -1], fluid j in [0, n_fluid)). The stencil is closed by copying
// the subdomain's end state, which zeroes the slope in boundary- and
// interface-adjacent cells.
std::pair<AuxVector2, AuxVector2> solid_slopes(const CoupledField& field, const Grid& grid,
                                               int j, const ElasticMaterial& mat);
std::pair<AuxVector5, AuxVector5> fluid_slopes(const CoupledField& field, const Grid& grid,
                                               const std::vector<AuxVector5>& t_op, int j,
                                               double lambda);

// Numerical flux at the edge between solid cells j-1 and j (j <= -1).
AuxVector2 interior_flux_solid(const CoupledField& field, const Grid& grid, int j,
                               const ElasticMaterial& mat, double lambda_bar);

// Numerical flux at the edge between fluid cells j-1 and j (j >= 1).
AuxVector5 interior_flux_fluid(const CoupledField& field, const Grid& grid,
                               const std::vector<AuxVector5>& t_op, int j, double lambda);

// First-order interface fluxes built from the coupling states: the left
// flux updates solid cell -1, the right flux updates fluid cell 0.
std::pair<AuxVector2, AuxVector5> interface_fluxes(const CouplingStates& cs, const TraceStates& t,
                                                   const ElasticMaterial& mat, double lambda,
                                                   double lambda_bar);

// Instantaneous velocity relaxation: common velocity (q1+q2)/(m1+m2);
// masses, alpha1 and the mixture momentum are unchanged (the latter
// bit-exactly).
FluidConserved velocity_projection(const FluidConserved& u);

// Shared projection core. The smaller-mass phase receives the rounded
// product m v; the larger phase closes the conservation identity and is
// nudged by ulps until q1' + q2' reproduces q1 + q2 bitwise, so the nudge
// is relatively negligible on the phase that absorbs it.
inline void velocity_projection_core(double m1, double q1, double m2, double q2,
                                     double& q1_out, double& q2_out) {
    const double mom = q1 + q2;
    const double v = mom / (m1 + m2);
    const bool first_small = m1 <= m2;
    const double small = (first_small ? m1 : m2) * v;
    double big = mom - small;
    for (int it = 0; it < 8; ++it) {
        const double defect = mom - (small + big);
        if (defect == 0.0) break;
        double nb = big + defect;
        if (nb == big) {
            nb = std::nextafter(big, defect > 0.0 ? std::numeric_limits<double>::infinity()
                                                  : -std::numeric_limits<double>::infinity());
        }
        big = nb;
    }
    q1_out = first_small ? small : big;
    q2_out = first_small ? big : small;
}

// Instantaneous pressure relaxation: moves alpha1 to the unique root of
// p1(m1/alpha) = p2(m2/(1-alpha)); masses and momenta untouched.
FluidConserved pressure_projection(const FluidConserved& u, const GasEos& eos1, const GasEos& eos2);

// Equilibrium volume fraction used by pressure_projection.
double equilibrium_alpha(double m1, double m2, const GasEos& eos1, const GasEos& eos2);

/// Optimized stepping engine. Successive calls to advance() evolve the field
/// in place; field() materializes the current state.
class Engine {
public:
    Engine(const CoupledField& initial, const SchemeParams& params);

    // One full update with the given time step. Throws SolverFailureError /
    // InvalidStateError on interface-solver failure or inadmissible states.
    void step(double dt);

    // Time step the next step would use (same lambda the fluxes will see).
    double plan_dt(const TimeControl& tc) const;

    // Computes the next dt from tc, performs one step, returns the dt used.
    double advance(const TimeControl& tc);

    CoupledField field() const;
    double time() const { return time_; }
    std::int64_t step_count() const { return step_count_; }
    double lambda() const { return lambda_; }
    double lambda_bar() const { return lambda_bar_; }
    const SchemeParams& params() const { return params_; }
    // Coupling output of the most recent step.
    const CouplingStates& last_coupling() const { return last_cs_; }
    const TraceStates& last_traces() const { return last_traces_; }
    // Edge fluxes used by the most recent step; fluid edge 0 and solid edge
    // n_solid are the interface fluxes.
    AuxVector5 last_fluid_edge_flux(int e) const;
    AuxVector2 last_solid_edge_flux(int e) const;

private:
    void fill_ghosts();
    void prepare();      // fluxes, T, lambda for the current field
    void finish(double dt);

    SchemeParams params_;
    int ns_ = 0;
    int nf_ = 0;
    double dx_ = 0.0;
    double time_ = 0.0;
    std::int64_t step_count_ = 0;
    double lambda_ = 0.0;
    double lambda_bar_ = 0.0;
    bool prepared_ = false;
    CouplingStates last_cs_{};
    TraceStates last_traces_{};

    // Solid arrays, two ghost layers per side (offset 2).
    std::vector<double> sw_, ss_;
    std::vector<double> sfw_, sfs_;          // elastic flux per cell
    std::vector<double> seqp_[2], seqm_[2];  // edge characteristic quotients
    std::vector<double> sflx_[2];            // edge fluxes

    // Fluid arrays, same layout.
    std::vector<double> fu_[5];
    std::vector<double> ff_[5];
    std::vector<double> ft_[5];
    std::vector<double> pv_, pp_;            // edge path integrals -> suffix sums
    std::vector<double> feqp_[5], feqm_[5];
    std::vector<double> fflx_[5];

    friend struct EngineTestAccess;
};

// One full update as a pure function (convenience wrapper around Engine).
CoupledField step(const CoupledField& field, const SchemeParams& params, double dt);

} // namespace bnfsi
