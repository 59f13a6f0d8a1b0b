#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcl/verify.hpp"

using namespace qcl;

TEST_CASE("cross_validate on the D4 closed-form point") {
    const auto cfg = SystemConfig::make(M_PI, M_PI / 4, 1.0, 0.0);
    const auto rec = cross_validate(cfg, 600, 20, 1e-8);
    CHECK(rec.label == DomainLabel::D4);
    CHECK(rec.matches_propositions_with_factor);
    CHECK(rec.refinement_stable);
    CHECK(rec.trace_error < 1e-10);
    // top matched pairs all within 1e-2 at this resolution
    REQUIRE(rec.matched.size() >= 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(rec.matched[i].rel_err < 1e-2);
    // the K eigenvalues mu_hess / factor include 1 and 1/(1-(pi/T)^2) = -1/15
    const double factor = rec.analytic.factor;
    bool saw_one = false, saw_first = false;
    for (const auto& m : rec.matched) {
        const double mu_k = m.analytic / factor;
        if (std::abs(mu_k - 1.0) < 1e-9) saw_one = true;
        if (std::abs(mu_k + 1.0 / 15.0) < 1e-9) saw_first = true;
    }
    CHECK(saw_one);
    CHECK(saw_first);
}

TEST_CASE("cross_validate D1: all negative, prose agrees") {
    const auto cfg = SystemConfig::make(3 * M_PI / 4, M_PI / 8, 1.0, 0.0);
    const auto rec = cross_validate(cfg, 400, 20);
    CHECK(rec.matches_propositions_with_factor);
    CHECK(rec.matches_theorem4_prose);
    CHECK(rec.numeric.n_pos == 0);
    CHECK(rec.factor_sign == 1);
}

TEST_CASE("cross_validate D3_low: prose mirrored, factor route holds") {
    const auto cfg = SystemConfig::make(0.3, 0.3, 1.0, 0.0);
    const auto rec = cross_validate(cfg, 400, 20);
    CHECK(rec.factor_sign == -1);
    CHECK(rec.matches_propositions_with_factor);
    CHECK_FALSE(rec.matches_theorem4_prose);  // paper prose says 1 positive here
    CHECK(rec.numeric.n_neg == 1);
}

TEST_CASE("cross_validate rejects excluded points") {
    CHECK_THROWS_AS(cross_validate(SystemConfig::make(2.3, M_PI - 2.3, 1.0, 0.0), 100, 5),
                    std::invalid_argument);
}

TEST_CASE("grid sweep over a coarse grid") {
    SweepOptions opts;
    opts.res_phi = 10;
    opts.res_t = 5;
    opts.n_nodes = 120;
    opts.n_max = 15;
    opts.threads = 2;
    const auto result = grid_sweep(opts);
    REQUIRE(result.records.size() == 50);
    CHECK(result.evaluated + result.skipped == 50);
    CHECK(result.evaluated > 30);

    for (const auto& rec : result.records) {
        if (!spectrum_defined(rec.label)) {
            // diagonal rows still carry J
            const double j = std::cos(rec.phi_w + rec.time) * std::cos(rec.phi_w + rec.time);
            CHECK(rec.j_at_f0 == doctest::Approx(j));
            continue;
        }
        CHECK(rec.matches_propositions_with_factor);
        CHECK(rec.refinement_stable);
        CHECK(rec.trace_error < 1e-6);
    }

    // label geometry: D1 in the lower-right triangle, D3 on the left square
    for (const auto& rec : result.records) {
        if (rec.label == DomainLabel::D1) {
            CHECK(rec.phi_w > M_PI_2);
            CHECK(rec.phi_w + rec.time < M_PI);
        }
        if (rec.label == DomainLabel::D3_low || rec.label == DomainLabel::D3_high)
            CHECK(rec.phi_w < M_PI_2);
        if (rec.label == DomainLabel::D2p) CHECK(rec.time < -std::tan(rec.phi_w));
        if (rec.label == DomainLabel::D2ppp) CHECK(rec.time > -std::tan(rec.phi_w));
    }
}

TEST_CASE("sweep reports are byte-identical across runs") {
    SweepOptions opts;
    opts.res_phi = 6;
    opts.res_t = 3;
    opts.n_nodes = 80;
    opts.n_max = 8;
    opts.threads = 2;
    opts.csv_path = "sweep_a.csv";
    opts.json_path = "sweep_a.json";
    grid_sweep(opts);
    opts.csv_path = "sweep_b.csv";
    opts.json_path = "sweep_b.json";
    grid_sweep(opts);

    auto slurp = [](const std::string& p) {
        std::ifstream f(p);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    CHECK(slurp("sweep_a.csv") == slurp("sweep_b.csv"));
    CHECK(slurp("sweep_a.json") == slurp("sweep_b.json"));
    CHECK(slurp("sweep_a.csv").find("phi_w,t,v,label,n_pos_num") != std::string::npos);
    std::remove("sweep_a.csv");
    std::remove("sweep_b.csv");
    std::remove("sweep_a.json");
    std::remove("sweep_b.json");
}

TEST_CASE("finite difference check at f0 and at a generic control") {
    const auto cfg = SystemConfig::make(1.9, 1.1, 1.0, 0.0);

    // at f0 the first-order term is zero and the second-order term must match
    const auto at_f0 = finite_diff_check(cfg, PiecewiseControl::constant(0.0, cfg.time, 16), 6,
                                         1e-3, 42);
    CHECK(at_f0.max_rel_err_second < 1e-3);

    PiecewiseControl ctrl;
    ctrl.total_time = cfg.time;
    ctrl.values = {0.4, -0.1, 0.3, 0.2, -0.5, 0.1, 0.0, 0.25,
                   -0.3, 0.15, 0.45, -0.2, 0.05, 0.6, -0.4, 0.1};
    const auto rep = finite_diff_check(cfg, ctrl, 6, 1e-4, 43);
    CHECK(rep.max_rel_err_first < 1e-6);
    CHECK(rep.max_rel_err_second < 1e-3);
    CHECK(rep.seed == 43);

    // zero direction: both sides vanish -> zero error contribution
    const double d0 = directional_derivative(cfg, ctrl, std::vector<double>(16, 0.0));
    CHECK(d0 == 0.0);

    CHECK_THROWS_AS(finite_diff_check(cfg, ctrl, 2, 0.5, 1), std::invalid_argument);
}

TEST_CASE("second directional derivative matches the discretized quadratic form") {
    // agreement between the segment-pair quadrature and the Nystrom matrix
    const auto cfg = SystemConfig::make(2.8, 0.45, 1.0, 0.0);
    const std::size_t m = 16;
    const auto zero = PiecewiseControl::constant(0.0, cfg.time, m);
    std::vector<double> dir(m);
    for (std::size_t k = 0; k < m; ++k) dir[k] = std::sin(0.7 * static_cast<double>(k) + 0.2);

    const double quad = second_directional_derivative(cfg, zero, dir);

    // dense reference: inner product through the f0 kernel
    const std::size_t n = 1200;
    const double h = cfg.time / (n - 1);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto k = std::min<std::size_t>(static_cast<std::size_t>(i * h / (cfg.time / m)), m - 1);
        f[i] = dir[k];
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            acc += wi * wj * hessian_kernel_at_f0(cfg, i * h, j * h) * f[i] * f[j];
        }
    }
    acc *= h * h;
    CHECK(quad == doctest::Approx(acc).epsilon(2e-3));
}
