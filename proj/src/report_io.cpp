#include "qcl/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qcl/optimize.hpp"
#include "qcl/verify.hpp"

namespace qcl {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void write_metadata_comments(std::ofstream& out, const SweepOptions& opts) {
    out << "# qcl sweep report\n";
    out << "# phi_range=" << fmt_g17(opts.phi_lo) << ":" << fmt_g17(opts.phi_hi)
        << " t_range=" << fmt_g17(opts.t_lo) << ":" << fmt_g17(opts.t_hi) << " res="
        << opts.res_phi << "x" << opts.res_t << "\n";
    out << "# v=" << fmt_g17(opts.v) << " n=" << opts.n_nodes << " n_max=" << opts.n_max
        << " rho=" << fmt_g17(opts.rho) << " top_eigs=" << opts.top_eigs << "\n";
    for (const auto& [k, v] : opts.metadata) out << "# " << k << "=" << v << "\n";
}

nlohmann::json record_json(const ValidationRecord& r, std::size_t top_eigs) {
    nlohmann::json j;
    j["phi_w"] = r.phi_w;
    j["t"] = r.time;
    j["v"] = r.v;
    j["label"] = to_string(r.label);
    j["j_at_f0"] = r.j_at_f0;
    const bool spectral = spectrum_defined(r.label);
    j["spectral"] = spectral;
    if (spectral) {
        j["n_pos_num"] = r.numeric.n_pos;
        j["n_neg_num"] = r.numeric.n_neg;
        j["n_zero_num"] = r.numeric.n_zero;
        j["n_pos_analytic_K"] = r.analytic.positive_count_k;
        j["factor_sign"] = r.factor_sign;
        j["match_prop"] = r.matches_propositions_with_factor;
        j["match_thm4"] = r.matches_theorem4_prose;
        j["refinement_stable"] = r.refinement_stable;
        j["trace_err"] = r.trace_error;
        nlohmann::json eigs = nlohmann::json::array();
        for (std::size_t i = 0; i < std::min(top_eigs, r.numeric.eigenvalues.size()); ++i)
            eigs.push_back(r.numeric.eigenvalues[i]);
        j["top_eigs"] = eigs;
        nlohmann::json matched = nlohmann::json::array();
        for (const auto& m : r.matched)
            matched.push_back({{"numeric", m.numeric}, {"analytic", m.analytic}, {"rel_err", m.rel_err}});
        j["matched"] = matched;
        j["unmatched_analytic"] = r.unmatched_analytic;
    }
    return j;
}

}  // namespace

void write_sweep_csv(const SweepResult& result, const SweepOptions& opts) {
    auto out = open_or_throw(opts.csv_path);
    write_metadata_comments(out, opts);
    out << "phi_w,t,v,label,n_pos_num,n_neg_num,n_zero_num,n_pos_analytic_K,factor_sign,"
           "match_prop,match_thm4,trace_err,j_f0";
    for (std::size_t i = 1; i <= opts.top_eigs; ++i) out << ",top_eig_" << i;
    out << "\n";
    for (const auto& r : result.records) {
        out << fmt_g17(r.phi_w) << "," << fmt_g17(r.time) << "," << fmt_g17(r.v) << ","
            << to_string(r.label) << ",";
        if (spectrum_defined(r.label)) {
            out << r.numeric.n_pos << "," << r.numeric.n_neg << "," << r.numeric.n_zero << ","
                << r.analytic.positive_count_k << "," << r.factor_sign << ","
                << (r.matches_propositions_with_factor ? 1 : 0) << ","
                << (r.matches_theorem4_prose ? 1 : 0) << "," << fmt_g17(r.trace_error);
        } else {
            out << ",,,,,,,";
        }
        out << "," << fmt_g17(r.j_at_f0);
        for (std::size_t i = 0; i < opts.top_eigs; ++i) {
            out << ",";
            if (spectrum_defined(r.label) && i < r.numeric.eigenvalues.size())
                out << fmt_g17(r.numeric.eigenvalues[i]);
        }
        out << "\n";
    }
}

void write_sweep_json(const SweepResult& result, const SweepOptions& opts) {
    nlohmann::json doc;
    doc["meta"] = {{"phi_lo", opts.phi_lo},   {"phi_hi", opts.phi_hi}, {"t_lo", opts.t_lo},
                   {"t_hi", opts.t_hi},       {"res_phi", opts.res_phi}, {"res_t", opts.res_t},
                   {"v", opts.v},             {"n", opts.n_nodes},     {"n_max", opts.n_max},
                   {"rho", opts.rho},         {"top_eigs", opts.top_eigs}};
    for (const auto& [k, v] : opts.metadata) doc["meta"][k] = v;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : result.records) doc["rows"].push_back(record_json(r, opts.top_eigs));
    auto out = open_or_throw(opts.json_path);
    out << doc.dump(1) << "\n";
}

void write_ascent_csv(const AscentTrace& trace, const std::string& path) {
    auto out = open_or_throw(path);
    out << "iter,j,grad_sup,step\n";
    for (const auto& p : trace.points)
        out << p.iter << "," << fmt_g17(p.j) << "," << fmt_g17(p.grad_sup) << ","
            << fmt_g17(p.step) << "\n";
}

}  // namespace qcl
