#include "bnfsi/snapshot_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bnfsi {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Output-time tag in microseconds, e.g. 50 -> "50", 12.5 -> "12.5".
std::string time_tag_us(double t) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", t * 1e6);
    return buf;
}

} // namespace

FieldSnapshot make_snapshot(const CoupledField& field, const Grid& grid, const GasEos& eos1,
                            const GasEos& eos2, double requested_time) {
    FieldSnapshot s;
    s.time = field.time;
    s.requested_time = requested_time;
    s.solid.reserve(field.solid.size());
    for (std::size_t i = 0; i < field.solid.size(); ++i) {
        s.solid.push_back({grid.solid_center(static_cast<int>(i)), field.solid[i].w,
                           field.solid[i].sigma});
    }
    s.fluid.reserve(field.fluid.size());
    for (std::size_t j = 0; j < field.fluid.size(); ++j) {
        const FluidConserved& u = field.fluid[j];
        const FluidPrimitive pr = cons_to_prim(u);
        const double p1 = pressure(eos1, pr.rho1);
        const double p2 = pressure(eos2, pr.rho2);
        FluidRecord rec;
        rec.x = grid.fluid_center(static_cast<int>(j));
        rec.alpha1 = u.alpha1;
        rec.rho1 = pr.rho1;
        rec.v1 = pr.v1;
        rec.p1 = p1;
        rec.rho2 = pr.rho2;
        rec.v2 = pr.v2;
        rec.p2 = p2;
        rec.rho = u.m1 + u.m2;
        rec.v = (u.q1 + u.q2) / (u.m1 + u.m2);
        rec.p = u.alpha1 * p1 + (1.0 - u.alpha1) * p2;
        s.fluid.push_back(rec);
    }
    return s;
}

std::pair<std::string, std::string> write_snapshot_csv(const FieldSnapshot& s,
                                                       const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::string tag = time_tag_us(s.requested_time);
    const std::string solid_path = dir + "/solid_t" + tag + ".csv";
    const std::string fluid_path = dir + "/fluid_t" + tag + ".csv";

    std::ofstream sf(solid_path);
    if (!sf) throw IoError("cannot open " + solid_path);
    sf << "# time = " << fmt(s.time) << ", requested = " << fmt(s.requested_time) << "\n";
    sf << "x,w,sigma\n";
    for (const SolidRecord& r : s.solid) {
        sf << fmt(r.x) << ',' << fmt(r.w) << ',' << fmt(r.sigma) << '\n';
    }
    if (!sf) throw IoError("write failed: " + solid_path);

    std::ofstream ff(fluid_path);
    if (!ff) throw IoError("cannot open " + fluid_path);
    ff << "# time = " << fmt(s.time) << ", requested = " << fmt(s.requested_time) << "\n";
    ff << "x,alpha1,rho1,v1,p1,rho2,v2,p2,rho,v,p\n";
    for (const FluidRecord& r : s.fluid) {
        ff << fmt(r.x) << ',' << fmt(r.alpha1) << ',' << fmt(r.rho1) << ',' << fmt(r.v1) << ','
           << fmt(r.p1) << ',' << fmt(r.rho2) << ',' << fmt(r.v2) << ',' << fmt(r.p2) << ','
           << fmt(r.rho) << ',' << fmt(r.v) << ',' << fmt(r.p) << '\n';
    }
    if (!ff) throw IoError("write failed: " + fluid_path);
    return {solid_path, fluid_path};
}

namespace {

std::vector<std::vector<double>> read_rows(const std::string& path, std::size_t ncols,
                                           double& time, double& requested) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::sscanf(line.c_str(), "# time = %lf, requested = %lf", &time, &requested);
            continue;
        }
        if (!header_seen) { // column header
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(ncols);
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::strtod(cell.c_str(), nullptr));
        }
        if (row.size() != ncols) {
            throw IoError("bad column count in " + path);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

FieldSnapshot read_snapshot_csv(const std::string& solid_path, const std::string& fluid_path) {
    FieldSnapshot s;
    double t = 0.0, rq = 0.0;
    for (const auto& r : read_rows(solid_path, 3, t, rq)) {
        s.solid.push_back({r[0], r[1], r[2]});
    }
    s.time = t;
    s.requested_time = rq;
    for (const auto& r : read_rows(fluid_path, 11, t, rq)) {
        s.fluid.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8], r[9], r[10]});
    }
    return s;
}

} // namespace bnfsi
