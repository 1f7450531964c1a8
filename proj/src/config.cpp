#include "bnfsi/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bnfsi {

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError("config: bad number for " + key + ": '" + v + "'");
    }
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != std::floor(x)) {
        throw ConfigError("config: expected integer for " + key);
    }
    return static_cast<int>(x);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (ss >> tok) {
        out.push_back(to_double(key, tok));
    }
    return out;
}

} // namespace

SimulationConfig parse_config(const std::string& text) {
    SimulationConfig cfg;
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "scenario.name") {
            if (val != "bubble" && val != "gridstudy") {
                throw ConfigError("config: unknown scenario '" + val + "'");
            }
            cfg.scenario = val;
        } else if (key == "grid.n_solid") {
            cfg.n_solid = to_int(key, val);
        } else if (key == "grid.n_fluid") {
            cfg.n_fluid = to_int(key, val);
        } else if (key == "grid.x_min") {
            cfg.x_min = to_double(key, val);
        } else if (key == "grid.x_max") {
            cfg.x_max = to_double(key, val);
        } else if (key == "solid.rho_s") {
            cfg.mat.rho_s = to_double(key, val);
        } else if (key == "solid.c_s") {
            cfg.mat.c_s = to_double(key, val);
        } else if (key == "eos1.c") {
            cfg.eos1.c = to_double(key, val);
        } else if (key == "eos1.pi") {
            cfg.eos1.pi = to_double(key, val);
        } else if (key == "eos2.c") {
            cfg.eos2.c = to_double(key, val);
        } else if (key == "eos2.pi") {
            cfg.eos2.pi = to_double(key, val);
        } else if (key == "interfacial.mode") {
            if (val == "mixture") {
                cfg.iparams.mode = InterfacialParams::Mode::mixture;
            } else if (val == "weighted") {
                cfg.iparams.mode = InterfacialParams::Mode::weighted;
            } else {
                throw ConfigError("config: unknown interfacial mode '" + val + "'");
            }
        } else if (key == "interfacial.d1") {
            cfg.iparams.d1 = to_double(key, val);
        } else if (key == "interfacial.d2") {
            cfg.iparams.d2 = to_double(key, val);
        } else if (key == "time.cfl") {
            cfg.cfl = to_double(key, val);
        } else if (key == "time.mode") {
            if (val == "hyperbolic") {
                cfg.time_mode = TimeControl::Mode::hyperbolic;
            } else if (val == "parabolic") {
                cfg.time_mode = TimeControl::Mode::parabolic_study;
            } else {
                throw ConfigError("config: unknown time mode '" + val + "'");
            }
        } else if (key == "time.t_end") {
            cfg.t_end = to_double(key, val);
        } else if (key == "time.outputs") {
            cfg.output_times = to_list(key, val);
        } else if (key == "relaxation.mode") {
            if (val == "instantaneous") {
                cfg.relax = RelaxationMode::instantaneous;
            } else if (val == "none") {
                cfg.relax = RelaxationMode::none;
            } else {
                throw ConfigError("config: unknown relaxation mode '" + val + "'");
            }
        } else if (key == "quadrature.order") {
            cfg.quadrature_order = to_int(key, val);
        } else if (key == "lambda.fixed") {
            cfg.fixed_lambda = to_double(key, val);
        } else if (key == "output.dir") {
            cfg.output_dir = val;
        } else if (key == "bubble.x_lo") {
            cfg.bubble_x_lo = to_double(key, val);
        } else if (key == "bubble.x_hi") {
            cfg.bubble_x_hi = to_double(key, val);
        } else if (key == "bubble.alpha_in") {
            cfg.bubble_alpha_in = to_double(key, val);
        } else if (key == "bubble.alpha_out") {
            cfg.bubble_alpha_out = to_double(key, val);
        } else if (key == "bubble.p_in") {
            cfg.bubble_p_in = to_double(key, val);
        } else if (key == "bubble.p_out") {
            cfg.bubble_p_out = to_double(key, val);
        } else if (key == "bubble.sigma0") {
            cfg.bubble_sigma0 = to_double(key, val);
        } else if (key == "bubble.w0") {
            cfg.bubble_w0 = to_double(key, val);
        } else if (key == "gridstudy.sigma0") {
            cfg.gridstudy_sigma0 = to_double(key, val);
        } else if (key == "gridstudy.w0") {
            cfg.gridstudy_w0 = to_double(key, val);
        } else if (key == "gridstudy.alpha_rate") {
            cfg.gridstudy_alpha_rate = to_double(key, val);
        } else if (key == "gridstudy.p_scale") {
            cfg.gridstudy_p_scale = to_double(key, val);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

std::string serialize_config(const SimulationConfig& cfg) {
    std::ostringstream out;
    out << "scenario.name = " << cfg.scenario << "\n";
    out << "grid.n_solid = " << cfg.n_solid << "\n";
    out << "grid.n_fluid = " << cfg.n_fluid << "\n";
    out << "grid.x_min = " << fmt(cfg.x_min) << "\n";
    out << "grid.x_max = " << fmt(cfg.x_max) << "\n";
    out << "solid.rho_s = " << fmt(cfg.mat.rho_s) << "\n";
    out << "solid.c_s = " << fmt(cfg.mat.c_s) << "\n";
    out << "eos1.c = " << fmt(cfg.eos1.c) << "\n";
    out << "eos1.pi = " << fmt(cfg.eos1.pi) << "\n";
    out << "eos2.c = " << fmt(cfg.eos2.c) << "\n";
    out << "eos2.pi = " << fmt(cfg.eos2.pi) << "\n";
    out << "interfacial.mode = "
        << (cfg.iparams.mode == InterfacialParams::Mode::mixture ? "mixture" : "weighted") << "\n";
    out << "interfacial.d1 = " << fmt(cfg.iparams.d1) << "\n";
    out << "interfacial.d2 = " << fmt(cfg.iparams.d2) << "\n";
    out << "time.cfl = " << fmt(cfg.cfl) << "\n";
    out << "time.mode = "
        << (cfg.time_mode == TimeControl::Mode::hyperbolic ? "hyperbolic" : "parabolic") << "\n";
    out << "time.t_end = " << fmt(cfg.t_end) << "\n";
    out << "time.outputs =";
    for (double t : cfg.output_times) out << ' ' << fmt(t);
    out << "\n";
    out << "relaxation.mode = "
        << (cfg.relax == RelaxationMode::instantaneous ? "instantaneous" : "none") << "\n";
    out << "quadrature.order = " << cfg.quadrature_order << "\n";
    out << "lambda.fixed = " << fmt(cfg.fixed_lambda) << "\n";
    out << "output.dir = " << cfg.output_dir << "\n";
    out << "bubble.x_lo = " << fmt(cfg.bubble_x_lo) << "\n";
    out << "bubble.x_hi = " << fmt(cfg.bubble_x_hi) << "\n";
    out << "bubble.alpha_in = " << fmt(cfg.bubble_alpha_in) << "\n";
    out << "bubble.alpha_out = " << fmt(cfg.bubble_alpha_out) << "\n";
    out << "bubble.p_in = " << fmt(cfg.bubble_p_in) << "\n";
    out << "bubble.p_out = " << fmt(cfg.bubble_p_out) << "\n";
    out << "bubble.sigma0 = " << fmt(cfg.bubble_sigma0) << "\n";
    out << "bubble.w0 = " << fmt(cfg.bubble_w0) << "\n";
    out << "gridstudy.sigma0 = " << fmt(cfg.gridstudy_sigma0) << "\n";
    out << "gridstudy.w0 = " << fmt(cfg.gridstudy_w0) << "\n";
    out << "gridstudy.alpha_rate = " << fmt(cfg.gridstudy_alpha_rate) << "\n";
    out << "gridstudy.p_scale = " << fmt(cfg.gridstudy_p_scale) << "\n";
    return out.str();
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void save_config(const SimulationConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config " + path);
    out << serialize_config(cfg);
}

void validate_config(const SimulationConfig& cfg) {
    if (cfg.n_solid < 1 || cfg.n_fluid < 1) {
        throw ConfigError("config: need at least one cell per side");
    }
    if (!(cfg.x_min < 0.0 && cfg.x_max > 0.0)) {
        throw ConfigError("config: domain must contain the interface x = 0");
    }
    const double dxs = -cfg.x_min / cfg.n_solid;
    const double dxf = cfg.x_max / cfg.n_fluid;
    if (std::abs(dxs - dxf) > 1e-9 * dxf) {
        throw ConfigError("config: solid and fluid cell widths differ");
    }
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) {
        throw ConfigError("config: CFL must lie in (0,1]");
    }
    if (!(cfg.t_end >= 0.0)) {
        throw ConfigError("config: t_end must be nonnegative");
    }
    for (double t : cfg.output_times) {
        if (t < 0.0 || t > cfg.t_end) {
            throw ConfigError("config: output time outside [0, t_end]");
        }
    }
    if (cfg.iparams.mode == InterfacialParams::Mode::weighted) {
        if (std::abs(cfg.iparams.d1 + cfg.iparams.d2 - 1.0) > 1e-12 || cfg.iparams.d1 < 0.0 ||
            cfg.iparams.d2 < 0.0) {
            throw ConfigError("config: weighted closure needs d1, d2 in [0,1] with d1 + d2 = 1");
        }
        // The closed-form interface solver is derived for the mixture
        // closure; coupled runs are therefore restricted to it.
        throw ConfigError("config: coupled runs require interfacial.mode = mixture");
    }
    if (cfg.quadrature_order < 1 || cfg.quadrature_order > 64) {
        throw ConfigError("config: quadrature order out of range");
    }
    if (!(cfg.mat.rho_s > 0.0 && cfg.mat.c_s > 0.0 && cfg.eos1.c > 0.0 && cfg.eos2.c > 0.0 &&
          cfg.eos1.pi >= 0.0 && cfg.eos2.pi >= 0.0)) {
        throw ConfigError("config: invalid material or EOS parameters");
    }
}

Grid grid_from_config(const SimulationConfig& cfg) {
    Grid g;
    g.n_solid = cfg.n_solid;
    g.n_fluid = cfg.n_fluid;
    g.dx = cfg.x_max / cfg.n_fluid;
    return g;
}

SchemeParams scheme_params_from_config(const SimulationConfig& cfg) {
    SchemeParams p;
    p.grid = grid_from_config(cfg);
    p.mat = cfg.mat;
    p.eos1 = cfg.eos1;
    p.eos2 = cfg.eos2;
    p.iparams = cfg.iparams;
    p.quad = QuadratureRule::gauss_legendre(cfg.quadrature_order);
    p.relax = cfg.relax;
    p.fixed_lambda = cfg.fixed_lambda;
    return p;
}

TimeControl time_control_from_config(const SimulationConfig& cfg) {
    TimeControl tc;
    tc.cfl = cfg.cfl;
    tc.mode = cfg.time_mode;
    tc.t_end = cfg.t_end;
    return tc;
}

} // namespace bnfsi
