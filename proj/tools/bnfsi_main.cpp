// Command-line driver: single runs, the grid-refinement study, one-shot
// interface Riemann solves and the structural property suite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bnfsi/config.hpp"
#include "bnfsi/coupling.hpp"
#include "bnfsi/metrics.hpp"
#include "bnfsi/properties.hpp"
#include "bnfsi/scenarios.hpp"
#include "bnfsi/sim_run.hpp"

namespace {

struct Overrides {
    std::string output_dir;
    double cfl = -1.0;
    int cells = -1;
    int quadrature_order = -1;
    double fixed_lambda = -1.0;
};

void add_override_flags(CLI::App* app, Overrides& ov) {
    app->add_option("--output-dir", ov.output_dir, "Override output directory");
    app->add_option("--cfl", ov.cfl, "Override Courant number");
    app->add_option("--cells", ov.cells, "Override cells per subdomain");
    app->add_option("--quadrature-order", ov.quadrature_order, "Override quadrature node count");
    app->add_option("--fixed-lambda", ov.fixed_lambda,
                    "Fix the fluid relaxation speed instead of recomputing it per step");
}

bnfsi::SimulationConfig load_with_overrides(const std::string& path, const Overrides& ov) {
    bnfsi::SimulationConfig cfg = bnfsi::load_config(path);
    if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
    if (ov.cfl > 0.0) cfg.cfl = ov.cfl;
    if (ov.cells > 0) {
        cfg.n_solid = ov.cells;
        cfg.n_fluid = ov.cells;
    }
    if (ov.quadrature_order > 0) cfg.quadrature_order = ov.quadrature_order;
    if (ov.fixed_lambda >= 0.0) cfg.fixed_lambda = ov.fixed_lambda;
    bnfsi::validate_config(cfg);
    return cfg;
}

int cmd_run(const std::string& config_path, const Overrides& ov) {
    const bnfsi::SimulationConfig cfg = load_with_overrides(config_path, ov);
    std::printf("scenario %s: %d+%d cells, t_end %.6g s, %zu outputs -> %s\n",
                cfg.scenario.c_str(), cfg.n_solid, cfg.n_fluid, cfg.t_end,
                cfg.output_times.size(), cfg.output_dir.c_str());
    bnfsi::run_simulation(cfg, [&](const bnfsi::FieldSnapshot& snap) {
        const auto paths = bnfsi::write_snapshot_csv(snap, cfg.output_dir);
        std::printf("t = %-12.6g (requested %-12.6g) wrote %s, %s\n", snap.time,
                    snap.requested_time, paths.first.c_str(), paths.second.c_str());
    });
    std::printf("done\n");
    return 0;
}

int cmd_converge(const std::string& config_path, const Overrides& ov, std::vector<int> ladder,
                 int reference) {
    const bnfsi::SimulationConfig cfg = load_with_overrides(config_path, ov);
    if (ladder.empty()) ladder = {200, 400, 800, 1600};
    const bnfsi::ConvergenceReport report = bnfsi::convergence_study(cfg, ladder, reference);
    std::filesystem::create_directories(cfg.output_dir);
    const std::string csv_path = cfg.output_dir + "/convergence.csv";
    std::ofstream out(csv_path);
    out << report.to_csv();
    std::cout << report.to_table();
    std::cout << "wrote " << csv_path << "\n";
    return 0;
}

// Key = value description of one trace-state set; material/EOS keys default
// to the bubble-collapse configuration.
struct TraceFile {
    bnfsi::SimulationConfig cfg; // provides materials and EOS
    double w = 0.0, sigma = 0.0;
    double alpha1 = 0.5, rho1 = 1.0, v1 = 0.0, rho2 = 1.0, v2 = 0.0;
    double lambda = -1.0, lambda_bar = -1.0;
    bool has_v0 = false;
    bnfsi::AuxVector5 v0{};
};

TraceFile parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bnfsi::IoError("cannot open " + path);
    TraceFile tf;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ss(line);
        std::string key, eq;
        double value;
        if (!(ss >> key >> eq >> value) || eq != "=") continue;
        if (key == "solid.w") tf.w = value;
        else if (key == "solid.sigma") tf.sigma = value;
        else if (key == "fluid.alpha1") tf.alpha1 = value;
        else if (key == "fluid.rho1") tf.rho1 = value;
        else if (key == "fluid.v1") tf.v1 = value;
        else if (key == "fluid.rho2") tf.rho2 = value;
        else if (key == "fluid.v2") tf.v2 = value;
        else if (key == "lambda") tf.lambda = value;
        else if (key == "lambda_bar") tf.lambda_bar = value;
        else if (key == "solid.rho_s") tf.cfg.mat.rho_s = value;
        else if (key == "solid.c_s") tf.cfg.mat.c_s = value;
        else if (key == "eos1.c") tf.cfg.eos1.c = value;
        else if (key == "eos1.pi") tf.cfg.eos1.pi = value;
        else if (key == "eos2.c") tf.cfg.eos2.c = value;
        else if (key == "eos2.pi") tf.cfg.eos2.pi = value;
        else if (key == "v0.alpha1") { tf.v0[0] = value; tf.has_v0 = true; }
        else if (key == "v0.m1") { tf.v0[1] = value; tf.has_v0 = true; }
        else if (key == "v0.q1") { tf.v0[2] = value; tf.has_v0 = true; }
        else if (key == "v0.m2") { tf.v0[3] = value; tf.has_v0 = true; }
        else if (key == "v0.q2") { tf.v0[4] = value; tf.has_v0 = true; }
        else throw bnfsi::ConfigError("trace file: unknown key '" + key + "'");
    }
    return tf;
}

int cmd_riemann(const std::string& trace_path) {
    const TraceFile tf = parse_trace_file(trace_path);
    bnfsi::FluidPrimitive prim{tf.alpha1, tf.rho1, tf.v1, tf.rho2, tf.v2};
    const bnfsi::FluidConserved u0 = bnfsi::prim_to_cons(prim);
    const double lambda =
        tf.lambda > 0.0 ? tf.lambda : bnfsi::fluid_wave_bound(u0, tf.cfg.eos1, tf.cfg.eos2);
    const double lambda_bar =
        tf.lambda_bar > 0.0 ? tf.lambda_bar : bnfsi::elastic_wave_bound(tf.cfg.mat);
    const bnfsi::AuxVector5 v0 =
        tf.has_v0 ? tf.v0 : bnfsi::fluid_flux(u0, tf.cfg.eos1, tf.cfg.eos2);
    const bnfsi::TraceStates t = bnfsi::make_trace_states({tf.w, tf.sigma}, u0, v0, lambda,
                                                          lambda_bar, tf.cfg.mat);
    bnfsi::SolveDiagnostics diag;
    const bnfsi::CouplingStates cs =
        bnfsi::solve_coupling(t, tf.cfg.mat, tf.cfg.eos1, tf.cfg.eos2, &diag);
    const std::array<double, 7> res =
        bnfsi::coupling_residuals(cs, t, tf.cfg.mat, tf.cfg.eos1, tf.cfg.eos2);

    std::printf("w_R,sigma_R,Vbar_w,Vbar_sigma,alpha1L,m1L,q1L,m2L,q2L,VL_alpha1,VL_m1,VL_q1,"
                "VL_m2,VL_q2,res_v1,res_v2,res_p1,res_p2,res_relv1,res_relv2,res_relp\n");
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                "%.17g,%.3e,%.3e,%.3e,%.3e,%.3e,%.3e,%.3e\n",
                cs.ubar_R.w, cs.ubar_R.sigma, cs.vbar_R[0], cs.vbar_R[1], cs.u_L.alpha1, cs.u_L.m1,
                cs.u_L.q1, cs.u_L.m2, cs.u_L.q2, cs.v_L[0], cs.v_L[1], cs.v_L[2], cs.v_L[3],
                cs.v_L[4], res[0], res[1], res[2], res[3], res[4], res[5], res[6]);
    std::fprintf(stderr, "roots: %d real, x = (%.6g, %.6g, %.6g), x1<0: %s, x3 unphysical: %s\n",
                 diag.n_real_roots, diag.roots[0], diag.roots[1], diag.roots[2],
                 diag.x1_negative ? "yes" : "no", diag.x3_unphysical ? "yes" : "no");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-D coupled fluid-structure solver: linear-elastic solid / "
                 "barotropic two-phase fluid with a relaxation-based interface Riemann solver"};
    app.require_subcommand(1);

    std::string config_path, trace_path;
    Overrides ov;
    std::vector<int> ladder;
    int reference = 3200;

    CLI::App* c_run = app.add_subcommand("run", "Run one simulation and write snapshot CSVs");
    c_run->add_option("config", config_path, "Configuration file")->required();
    add_override_flags(c_run, ov);

    CLI::App* c_conv =
        app.add_subcommand("converge", "Run the grid ladder and emit the convergence report");
    c_conv->add_option("config", config_path, "Configuration file")->required();
    c_conv->add_option("--ladder", ladder, "Ladder resolutions (cells per subdomain)");
    c_conv->add_option("--reference", reference, "Reference resolution");
    add_override_flags(c_conv, ov);

    CLI::App* c_rs = app.add_subcommand("riemann", "Single interface Riemann solve from a "
                                                   "trace-states file; CSV on stdout");
    c_rs->add_option("traces", trace_path, "Trace-states file")->required();

    CLI::App* c_check = app.add_subcommand("check", "Run the structural property suite");

    try {
        app.parse(argc, argv);
        if (c_run->parsed()) return cmd_run(config_path, ov);
        if (c_conv->parsed()) return cmd_converge(config_path, ov, ladder, reference);
        if (c_rs->parsed()) return cmd_riemann(trace_path);
        if (c_check->parsed()) {
            const int failures = bnfsi::run_property_suite(std::cout);
            return failures == 0 ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
