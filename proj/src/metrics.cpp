#include "bnfsi/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace bnfsi {

CouplingErrors coupling_errors(const CoupledField& field, const GasEos& eos1, const GasEos& eos2) {
    if (field.solid.empty() || field.fluid.empty()) {
        throw DomainError("coupling_errors: need at least one cell per side");
    }
    const ElasticState& s = field.solid.back();
    const FluidConserved& u = field.fluid.front();
    const MixtureState m = mixture(u, eos1, eos2);
    CouplingErrors e;
    e.ec1 = std::abs(m.rho_v / m.rho - s.w);
    e.ec2 = std::abs(m.p + s.sigma);
    return e;
}

namespace {

double record_value(const SolidRecord& r, Quantity q) {
    return q == Quantity::w ? r.w : r.sigma;
}

double record_value(const FluidRecord& r, Quantity q) {
    return q == Quantity::rho ? r.rho : r.rho * r.v;
}

template <typename Rec>
double l1_on_side(const std::vector<Rec>& coarse, const std::vector<Rec>& ref, Quantity q) {
    const std::size_t nc = coarse.size();
    const std::size_t nr = ref.size();
    if (nc == 0 || nr % nc != 0) {
        throw DomainError("l1_error: reference resolution is not a multiple of the coarse one");
    }
    const std::size_t k = nr / nc;
    // dx_coarse from the record coordinates (uniform grid).
    const double dxc = nc > 1 ? (coarse[1].x - coarse[0].x) : 2.0 * std::abs(coarse[0].x);
    double sum = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
        double avg = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            avg += record_value(ref[j * k + i], q);
        }
        avg /= static_cast<double>(k);
        sum += std::abs(record_value(coarse[j], q) - avg);
    }
    return dxc * sum;
}

} // namespace

double l1_error(const FieldSnapshot& coarse, const FieldSnapshot& reference, Quantity q) {
    if (q == Quantity::w || q == Quantity::sigma) {
        return l1_on_side(coarse.solid, reference.solid, q);
    }
    return l1_on_side(coarse.fluid, reference.fluid, q);
}

double eoc(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw DomainError("eoc: errors must be positive");
    }
    return std::log2(e_coarse / e_fine);
}

void fill_eoc_columns(ConvergenceReport& report) {
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        ConvergenceRow& r = report.rows[i];
        if (i == 0) {
            r.ec1_eoc = r.ec2_eoc = r.ew_eoc = r.esigma_eoc = r.erho_eoc = r.erhov_eoc =
                std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const ConvergenceRow& p = report.rows[i - 1];
        r.ec1_eoc = eoc(p.ec1, r.ec1);
        r.ec2_eoc = eoc(p.ec2, r.ec2);
        r.ew_eoc = eoc(p.ew, r.ew);
        r.esigma_eoc = eoc(p.esigma, r.esigma);
        r.erho_eoc = eoc(p.erho, r.erho);
        r.erhov_eoc = eoc(p.erhov, r.erhov);
    }
}

namespace {

std::string num(double v, const char* spec = "%.6e") {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

} // namespace

std::string ConvergenceReport::to_csv() const {
    std::ostringstream out;
    out << "N,EC1,EC1_eoc,EC2,EC2_eoc,Ew,Ew_eoc,Esigma,Esigma_eoc,Erho,Erho_eoc,Erhov,Erhov_eoc\n";
    for (const ConvergenceRow& r : rows) {
        out << r.n << ',' << num(r.ec1) << ',' << num(r.ec1_eoc, "%.3f") << ',' << num(r.ec2) << ','
            << num(r.ec2_eoc, "%.3f") << ',' << num(r.ew) << ',' << num(r.ew_eoc, "%.3f") << ','
            << num(r.esigma) << ',' << num(r.esigma_eoc, "%.3f") << ',' << num(r.erho) << ','
            << num(r.erho_eoc, "%.3f") << ',' << num(r.erhov) << ',' << num(r.erhov_eoc, "%.3f")
            << "\n";
    }
    return out.str();
}

std::string ConvergenceReport::to_table() const {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%6s %11s %6s %11s %6s %11s %6s %11s %6s %11s %6s %11s %6s\n",
                  "N", "E_C1", "EoC", "E_C2", "EoC", "E_w", "EoC", "E_sigma", "EoC", "E_rho", "EoC",
                  "E_rhov", "EoC");
    out << buf;
    for (const ConvergenceRow& r : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%6d %11.3e %6s %11.3e %6s %11.3e %6s %11.3e %6s %11.3e %6s %11.3e %6s\n",
                      r.n, r.ec1, num(r.ec1_eoc, "%.3f").c_str(), r.ec2,
                      num(r.ec2_eoc, "%.3f").c_str(), r.ew, num(r.ew_eoc, "%.3f").c_str(), r.esigma,
                      num(r.esigma_eoc, "%.3f").c_str(), r.erho, num(r.erho_eoc, "%.3f").c_str(),
                      r.erhov, num(r.erhov_eoc, "%.3f").c_str());
        out << buf;
    }
    out << "reference N = " << n_reference << " (same scheme, restricted by cell averaging)\n";
    return out.str();
}

} // namespace bnfsi
