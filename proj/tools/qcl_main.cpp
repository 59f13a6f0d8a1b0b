// Command-line front end: classify / spectrum / roots / validate / sweep /
// ascend / probe, with reproducible CSV/JSON outputs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcl/analytic.hpp"
#include "qcl/objective.hpp"
#include "qcl/optimize.hpp"
#include "qcl/report_io.hpp"
#include "qcl/simd_kernels.hpp"
#include "qcl/spectral.hpp"
#include "qcl/verify.hpp"

namespace {

struct CommonArgs {
    double phi_w = 0.0;
    double t = 0.0;
    double v = 1.0;
    std::size_t n = 1000;
    std::size_t n_max = 50;
    double rho = 1e-8;
    std::uint64_t seed = 12345;
    std::string out;
    std::string format = "csv";
    bool pi_units = false;

    double angle(double x) const { return pi_units ? x * M_PI : x; }
};

void add_point_flags(CLI::App* cmd, CommonArgs& a, bool need_point = true) {
    auto* pw = cmd->add_option("--phi-w", a.phi_w, "gate angle phi_W (radians)");
    auto* tt = cmd->add_option("--t", a.t, "final time T (radians)");
    if (need_point) {
        pw->required();
        tt->required();
    }
    cmd->add_option("--v", a.v, "coupling magnitude v")->capture_default_str();
    cmd->add_option("--n", a.n, "quadrature nodes N")->capture_default_str();
    cmd->add_option("--n-max", a.n_max, "analytic root cutoff")->capture_default_str();
    cmd->add_option("--rho", a.rho, "zero threshold ratio (tau = rho max|eig|)")
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", a.out, "output file path");
    cmd->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_flag("--pi-units", a.pi_units, "interpret angles as multiples of pi");
}

nlohmann::json meta_json(const CommonArgs& a) {
    return {{"v", a.v},     {"n", a.n},         {"n_max", a.n_max},
            {"rho", a.rho}, {"seed", a.seed},   {"pi_units", a.pi_units},
            {"kernel_lane", qcl::kern::active_lane_name()},
            {"f0_denominator", "(Tr V)^2 - 2 Tr(V^2)"},
            {"t0_norm", "spread = lmax - lmin"}};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << body;
}

int cmd_classify(const CommonArgs& a) {
    const auto label = qcl::classify(a.angle(a.phi_w), a.angle(a.t));
    std::printf("label=%s phi_w=%s t=%s\n", qcl::to_string(label).c_str(),
                qcl::fmt_g17(a.angle(a.phi_w)).c_str(), qcl::fmt_g17(a.angle(a.t)).c_str());
    return 0;
}

int cmd_spectrum(const CommonArgs& a, const std::string& which) {
    const auto cfg = qcl::SystemConfig::make(a.angle(a.phi_w), a.angle(a.t), a.v, 0.0);
    const qcl::KernelSpec kernel =
        which == "hess" ? qcl::hessian_at_f0_kernel(cfg) : qcl::k_operator_kernel(cfg);
    const auto op = qcl::discretize(kernel, cfg.time, a.n);
    const auto eigs = qcl::sym_eigen(op);
    double amax = 0.0;
    for (double x : eigs) amax = std::max(amax, std::abs(x));
    auto rep = qcl::spectrum_report(eigs, a.rho * amax, "numeric");
    rep.n_nodes = a.n;

    std::printf("kernel=%s N=%zu trace=%s tau=%s\n", kernel.form.c_str(), a.n,
                qcl::fmt_g17(rep.trace).c_str(), qcl::fmt_g17(rep.tau).c_str());
    std::printf("counts: pos=%zu neg=%zu zero=%zu\n", rep.n_pos, rep.n_neg, rep.n_zero);
    std::vector<double> by_mag = rep.eigenvalues;
    std::sort(by_mag.begin(), by_mag.end(),
              [](double x, double y) { return std::abs(x) > std::abs(y); });
    std::printf("top eigenvalues by |.|:\n");
    for (std::size_t i = 0; i < std::min<std::size_t>(10, by_mag.size()); ++i)
        std::printf("  %s\n", qcl::fmt_g17(by_mag[i]).c_str());

    if (!a.out.empty()) {
        if (a.format == "json") {
            nlohmann::json doc;
            doc["meta"] = meta_json(a);
            doc["meta"]["kernel"] = kernel.form;
            doc["phi_w"] = cfg.phi_w;
            doc["t"] = cfg.time;
            doc["trace"] = rep.trace;
            doc["tau"] = rep.tau;
            doc["n_pos"] = rep.n_pos;
            doc["n_neg"] = rep.n_neg;
            doc["n_zero"] = rep.n_zero;
            doc["eigenvalues"] = rep.eigenvalues;
            write_text(a.out, doc.dump(1) + "\n");
        } else {
            std::string body = "# qcl spectrum kernel=" + kernel.form + " n=" + std::to_string(a.n) +
                               " rho=" + qcl::fmt_g17(a.rho) + "\nindex,eigenvalue\n";
            for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
                body += std::to_string(i) + "," + qcl::fmt_g17(rep.eigenvalues[i]) + "\n";
            write_text(a.out, body);
        }
    }
    return 0;
}

int cmd_roots(const CommonArgs& a) {
    const auto cfg = qcl::SystemConfig::make(a.angle(a.phi_w), a.angle(a.t), a.v, 0.0);
    const auto sp = qcl::analytic_spectrum(cfg, a.n_max);
    std::printf("label=%s factor=v^2 sin(2 phi)=%s positive mu_K count=%zu\n",
                qcl::to_string(sp.label).c_str(), qcl::fmt_g17(sp.factor).c_str(),
                sp.positive_count_k);
    std::printf("%-12s %-5s %-22s %-22s %-22s mult\n", "equation", "idx", "a", "mu_K", "mu_Hess");
    for (std::size_t i = 0; i < std::min<std::size_t>(12, sp.records.size()); ++i) {
        const auto& r = sp.records[i];
        std::printf("%-12s %-5zu %-22s %-22s %-22s %d\n", qcl::to_string(r.tag).c_str(), r.index,
                    qcl::fmt_g17(r.a).c_str(), qcl::fmt_g17(r.mu_k).c_str(),
                    qcl::fmt_g17(r.mu_hess).c_str(), r.multiplicity);
    }
    if (sp.records.size() > 12) std::printf("  ... %zu records total\n", sp.records.size());

    if (!a.out.empty()) {
        if (a.format == "json") {
            nlohmann::json doc;
            doc["meta"] = meta_json(a);
            doc["label"] = qcl::to_string(sp.label);
            doc["factor"] = sp.factor;
            doc["positive_count_k"] = sp.positive_count_k;
            doc["records"] = nlohmann::json::array();
            for (const auto& r : sp.records) {
                const auto bound = qcl::eigenvalue_bounds(r);
                doc["records"].push_back({{"equation", qcl::to_string(r.tag)},
                                          {"index", r.index},
                                          {"bracket_lo", r.bracket_lo},
                                          {"bracket_hi", r.bracket_hi},
                                          {"a", r.a},
                                          {"mu_k", r.mu_k},
                                          {"mu_hess", r.mu_hess},
                                          {"multiplicity", r.multiplicity},
                                          {"residual", r.residual},
                                          {"abs_mu_lo", bound.lo},
                                          {"abs_mu_hi", bound.hi}});
            }
            write_text(a.out, doc.dump(1) + "\n");
        } else {
            std::string body =
                "# qcl roots label=" + qcl::to_string(sp.label) + " n_max=" + std::to_string(a.n_max) +
                "\nequation,index,bracket_lo,bracket_hi,a,mu_k,mu_hess,multiplicity,residual\n";
            for (const auto& r : sp.records)
                body += qcl::to_string(r.tag) + "," + std::to_string(r.index) + "," +
                        qcl::fmt_g17(r.bracket_lo) + "," + qcl::fmt_g17(r.bracket_hi) + "," +
                        qcl::fmt_g17(r.a) + "," + qcl::fmt_g17(r.mu_k) + "," +
                        qcl::fmt_g17(r.mu_hess) + "," + std::to_string(r.multiplicity) + "," +
                        qcl::fmt_g17(r.residual) + "\n";
            write_text(a.out, body);
        }
    }
    return 0;
}

int cmd_validate(const CommonArgs& a) {
    const auto cfg = qcl::SystemConfig::make(a.angle(a.phi_w), a.angle(a.t), a.v, 0.0);
    const auto rec = qcl::cross_validate(cfg, a.n, a.n_max, a.rho);
    std::printf("label=%s factor_sign=%+d\n", qcl::to_string(rec.label).c_str(), rec.factor_sign);
    std::printf("numeric counts (N=%zu): pos=%zu neg=%zu zero=%zu\n", rec.n_nodes,
                rec.numeric.n_pos, rec.numeric.n_neg, rec.numeric.n_zero);
    std::printf("refined counts (N=%zu): pos=%zu neg=%zu zero=%zu\n", 2 * rec.n_nodes,
                rec.numeric_refined.n_pos, rec.numeric_refined.n_neg, rec.numeric_refined.n_zero);
    std::printf("match_propositions_with_factor=%d match_theorem4_prose=%d stable=%d\n",
                rec.matches_propositions_with_factor ? 1 : 0, rec.matches_theorem4_prose ? 1 : 0,
                rec.refinement_stable ? 1 : 0);
    std::printf("trace_err=%s matched=%zu unmatched_analytic=%zu\n",
                qcl::fmt_g17(rec.trace_error).c_str(), rec.matched.size(),
                rec.unmatched_analytic.size());
    for (std::size_t i = 0; i < std::min<std::size_t>(8, rec.matched.size()); ++i)
        std::printf("  num=%-22s ana=%-22s rel=%s\n", qcl::fmt_g17(rec.matched[i].numeric).c_str(),
                    qcl::fmt_g17(rec.matched[i].analytic).c_str(),
                    qcl::fmt_g17(rec.matched[i].rel_err).c_str());

    if (!a.out.empty()) {
        qcl::SweepOptions opts;
        opts.top_eigs = 10;
        nlohmann::json doc;
        doc["meta"] = meta_json(a);
        qcl::SweepResult one;
        one.records.push_back(rec);
        if (a.format == "json") {
            opts.json_path = a.out;
            qcl::write_sweep_json(one, opts);
        } else {
            opts.csv_path = a.out;
            qcl::write_sweep_csv(one, opts);
        }
    }
    return 0;
}

int cmd_sweep(const CommonArgs& a, const std::string& res, const std::string& phi_range,
              const std::string& t_range, std::size_t threads) {
    qcl::SweepOptions opts;
    opts.v = a.v;
    opts.n_nodes = a.n;
    opts.n_max = a.n_max;
    opts.rho = a.rho;
    opts.threads = threads;

    auto parse_pair = [&](const std::string& s, char sep, double& lo, double& hi) {
        const auto pos = s.find(sep);
        if (pos == std::string::npos) throw std::runtime_error("bad range: " + s);
        lo = std::stod(s.substr(0, pos));
        hi = std::stod(s.substr(pos + 1));
        if (a.pi_units) {
            lo *= M_PI;
            hi *= M_PI;
        }
    };
    if (!phi_range.empty()) parse_pair(phi_range, ':', opts.phi_lo, opts.phi_hi);
    if (!t_range.empty()) parse_pair(t_range, ':', opts.t_lo, opts.t_hi);
    const auto xpos = res.find('x');
    if (xpos == std::string::npos) throw std::runtime_error("bad --res, expected PHIxT like 40x20");
    opts.res_phi = std::stoul(res.substr(0, xpos));
    opts.res_t = std::stoul(res.substr(xpos + 1));

    for (auto& [k, v] : meta_json(a).items()) opts.metadata.emplace_back(k, v.dump());

    if (!a.out.empty()) {
        if (a.format == "json")
            opts.json_path = a.out;
        else
            opts.csv_path = a.out;
    }
    const auto result = qcl::grid_sweep(opts);

    std::size_t match_prop = 0, match_prose = 0;
    for (const auto& r : result.records)
        if (qcl::spectrum_defined(r.label)) {
            match_prop += r.matches_propositions_with_factor ? 1 : 0;
            match_prose += r.matches_theorem4_prose ? 1 : 0;
        }
    std::printf("sweep %zux%zu: evaluated=%zu skipped=%zu\n", opts.res_phi, opts.res_t,
                result.evaluated, result.skipped);
    std::printf("matches_propositions_with_factor: %zu/%zu\n", match_prop, result.evaluated);
    std::printf("matches_theorem4_prose:           %zu/%zu\n", match_prose, result.evaluated);
    if (!a.out.empty()) std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

int cmd_ascend(const CommonArgs& a, std::size_t segments, std::size_t iters, double step0,
               double tol) {
    const auto cfg = qcl::SystemConfig::make(a.angle(a.phi_w), a.angle(a.t), a.v, 0.0);
    const auto ctrl0 = qcl::random_control(cfg.time, segments, a.seed);
    qcl::AscentOptions opts;
    opts.max_iters = iters;
    opts.step0 = step0;
    opts.tol = tol;
    const auto trace = qcl::gradient_ascent(cfg, ctrl0, opts);
    std::printf("iters=%zu final_J=%s grad_sup=%s reached_tol=%d\n", trace.iters,
                qcl::fmt_g17(trace.final_j).c_str(),
                qcl::fmt_g17(trace.points.back().grad_sup).c_str(), trace.reached_tol ? 1 : 0);
    if (!a.out.empty()) {
        qcl::write_ascent_csv(trace, a.out);
        std::printf("wrote %s\n", a.out.c_str());
    }
    return 0;
}

int cmd_probe(const CommonArgs& a, double eps, std::size_t k, std::size_t segments) {
    const auto cfg = qcl::SystemConfig::make(a.angle(a.phi_w), a.angle(a.t), a.v, 0.0);
    const auto rows = qcl::saddle_probe(cfg, eps, k, segments);
    std::printf("%-24s %-24s %-12s\n", "hessian_eigenvalue", "fitted_q", "rel_err");
    bool pos = false, neg = false;
    for (const auto& r : rows) {
        const double rel = std::abs(r.q - r.eigenvalue) / std::max(std::abs(r.eigenvalue), 1e-12);
        std::printf("%-24s %-24s %s\n", qcl::fmt_g17(r.eigenvalue).c_str(),
                    qcl::fmt_g17(r.q).c_str(), qcl::fmt_g17(rel).c_str());
        pos |= r.q > 0.0;
        neg |= r.q < 0.0;
    }
    std::printf("both_signs_present=%d\n", (pos && neg) ? 1 : 0);
    if (!a.out.empty()) {
        std::string body = "# qcl probe eps=" + qcl::fmt_g17(eps) + "\neigenvalue,q,j_plus,j_minus\n";
        for (const auto& r : rows)
            body += qcl::fmt_g17(r.eigenvalue) + "," + qcl::fmt_g17(r.q) + "," +
                    qcl::fmt_g17(r.j_plus) + "," + qcl::fmt_g17(r.j_minus) + "\n";
        write_text(a.out, body);
        std::printf("wrote %s\n", a.out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum control landscape toolkit: spectra of the Hessian at the special "
                 "control f0 = 0 for single-qubit phase-shift gates"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string which_kernel = "k";
    std::string res = "40x20", phi_range, t_range;
    std::size_t threads = 0, segments = 64, iters = 500, probe_k = 6;
    double step0 = 1.0, tol = 1e-8, eps = 1e-2;

    auto* c_classify = app.add_subcommand("classify", "domain label of a parameter point");
    add_point_flags(c_classify, a);

    auto* c_spectrum = app.add_subcommand("spectrum", "numeric spectrum of K (or the Hessian)");
    add_point_flags(c_spectrum, a);
    c_spectrum->add_option("--kernel", which_kernel, "k | hess")
        ->check(CLI::IsMember({"k", "hess"}))
        ->capture_default_str();

    auto* c_roots = app.add_subcommand("roots", "analytic spectrum from the characteristic equations");
    add_point_flags(c_roots, a);

    auto* c_validate = app.add_subcommand("validate", "cross-validate numeric vs analytic at a point");
    add_point_flags(c_validate, a);

    auto* c_sweep = app.add_subcommand("sweep", "grid sweep over the (phi_w, T) rectangle");
    add_point_flags(c_sweep, a, false);
    c_sweep->add_option("--res", res, "grid resolution PHIxT")->capture_default_str();
    c_sweep->add_option("--phi-range", phi_range, "phi_w range lo:hi (default 0:pi)");
    c_sweep->add_option("--t-range", t_range, "T range lo:hi (default 0:pi/2)");
    c_sweep->add_option("--threads", threads, "worker threads (0 = auto)")->capture_default_str();

    auto* c_ascend = app.add_subcommand("ascend", "gradient ascent from a seeded random control");
    add_point_flags(c_ascend, a);
    c_ascend->add_option("--m", segments, "control segments")->capture_default_str();
    c_ascend->add_option("--iters", iters, "max iterations")->capture_default_str();
    c_ascend->add_option("--step0", step0, "initial step")->capture_default_str();
    c_ascend->add_option("--tol", tol, "gradient sup-norm stop")->capture_default_str();

    auto* c_probe = app.add_subcommand("probe", "second-order saddle probe along eigendirections");
    add_point_flags(c_probe, a);
    c_probe->add_option("--eps", eps, "probe amplitude")->capture_default_str();
    c_probe->add_option("--k", probe_k, "number of eigendirections")->capture_default_str();
    c_probe->add_option("--m", segments, "control segments")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(a);
        if (c_spectrum->parsed()) return cmd_spectrum(a, which_kernel);
        if (c_roots->parsed()) return cmd_roots(a);
        if (c_validate->parsed()) return cmd_validate(a);
        if (c_sweep->parsed()) return cmd_sweep(a, res, phi_range, t_range, threads);
        if (c_ascend->parsed()) return cmd_ascend(a, segments, iters, step0, tol);
        if (c_probe->parsed()) return cmd_probe(a, eps, probe_k, segments);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
