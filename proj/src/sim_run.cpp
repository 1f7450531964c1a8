#include "bnfsi/sim_run.hpp"

#include <algorithm>
#include <cmath>

#include "bnfsi/scenarios.hpp"

namespace bnfsi {

void run_simulation(const SimulationConfig& cfg,
                    const std::function<void(const FieldSnapshot&)>& sink) {
    validate_config(cfg);
    const Grid grid = grid_from_config(cfg);
    const SchemeParams params = scheme_params_from_config(cfg);
    const TimeControl tc = time_control_from_config(cfg);

    std::vector<double> outputs = cfg.output_times;
    std::sort(outputs.begin(), outputs.end());

    Engine engine(make_initial_field(cfg), params);

    auto emit = [&](double requested) {
        sink(make_snapshot(engine.field(), grid, cfg.eos1, cfg.eos2, requested));
    };

    std::size_t oi = 0;
    while (oi < outputs.size() && outputs[oi] <= 0.0) {
        emit(outputs[oi]);
        ++oi;
    }
    while (engine.time() < tc.t_end) {
        const double t_now = engine.time();
        const double dt = engine.plan_dt(tc);
        if (!(dt > 0.0)) {
            throw DomainError("run: nonpositive time step");
        }
        // Requested times inside this step are served by the nearer of the
        // two completed step times (ties go to the later one).
        std::size_t emit_after = 0;
        while (oi < outputs.size() && outputs[oi] <= t_now + dt) {
            if (outputs[oi] - t_now < t_now + dt - outputs[oi]) {
                emit(outputs[oi]);
            } else {
                ++emit_after;
            }
            ++oi;
        }
        engine.step(dt);
        for (std::size_t k = 0; k < emit_after; ++k) {
            emit(outputs[oi - emit_after + k]);
        }
    }
    // Any remaining requests (at or beyond t_end) see the final state.
    for (; oi < outputs.size(); ++oi) {
        emit(outputs[oi]);
    }
}

std::vector<FieldSnapshot> run(const SimulationConfig& cfg) {
    std::vector<FieldSnapshot> out;
    run_simulation(cfg, [&](const FieldSnapshot& s) { out.push_back(s); });
    return out;
}

namespace {

// Runs cfg at the given per-subdomain resolution to t_end and returns the
// final field.
CoupledField run_to_end(SimulationConfig cfg, int cells) {
    cfg.n_solid = cells;
    cfg.n_fluid = cells;
    cfg.output_times.clear();
    validate_config(cfg);
    const SchemeParams params = scheme_params_from_config(cfg);
    const TimeControl tc = time_control_from_config(cfg);
    Engine engine(make_initial_field(cfg), params);
    while (engine.time() < tc.t_end) {
        engine.advance(tc);
    }
    return engine.field();
}

} // namespace

ConvergenceReport convergence_study(const SimulationConfig& cfg, const std::vector<int>& cells,
                                    int reference_cells) {
    std::vector<int> ns = cells;
    std::sort(ns.begin(), ns.end());
    for (int n : ns) {
        if (n < 1 || reference_cells % n != 0) {
            throw DomainError("convergence_study: reference resolution must be a multiple of "
                              "every ladder resolution");
        }
    }

    SimulationConfig ref_cfg = cfg;
    ref_cfg.n_solid = reference_cells;
    ref_cfg.n_fluid = reference_cells;
    Grid ref_grid = grid_from_config(ref_cfg);
    const CoupledField ref_field = run_to_end(cfg, reference_cells);
    const FieldSnapshot ref_snap = make_snapshot(ref_field, ref_grid, cfg.eos1, cfg.eos2, cfg.t_end);

    ConvergenceReport report;
    report.n_reference = reference_cells;
    for (int n : ns) {
        SimulationConfig run_cfg = cfg;
        run_cfg.n_solid = n;
        run_cfg.n_fluid = n;
        const CoupledField field = run_to_end(cfg, n);
        const FieldSnapshot snap =
            make_snapshot(field, grid_from_config(run_cfg), cfg.eos1, cfg.eos2, cfg.t_end);
        const CouplingErrors ce = coupling_errors(field, cfg.eos1, cfg.eos2);
        ConvergenceRow row;
        row.n = n;
        row.ec1 = ce.ec1;
        row.ec2 = ce.ec2;
        row.ew = l1_error(snap, ref_snap, Quantity::w);
        row.esigma = l1_error(snap, ref_snap, Quantity::sigma);
        row.erho = l1_error(snap, ref_snap, Quantity::rho);
        row.erhov = l1_error(snap, ref_snap, Quantity::rhov);
        report.rows.push_back(row);
    }
    fill_eoc_columns(report);
    return report;
}

} // namespace bnfsi
