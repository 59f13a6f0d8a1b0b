#include <doctest.h>

#include <cmath>

#include "qcl/analytic.hpp"
#include "qcl/optimize.hpp"

using namespace qcl;

TEST_CASE("ascent stops immediately at a realized gate") {
    // pick a control, then aim for the gate it realizes: J = 1 from the start
    const auto cfg = SystemConfig::make(1.3, 1.0, 1.0, 0.0);
    const auto ctrl = PiecewiseControl::constant(0.0, M_PI - 1.3, 8);
    const auto cfg_exact = SystemConfig::make(1.3, M_PI - 1.3, 1.0, 0.0);
    AscentOptions opts;
    opts.max_iters = 50;
    const auto trace = gradient_ascent(cfg_exact, ctrl, opts);
    CHECK(trace.final_j == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(trace.reached_tol);
    CHECK(trace.iters < 3);
}

TEST_CASE("ascent makes no progress from the exact critical point") {
    const auto cfg = SystemConfig::make(2.0, 0.6, 1.0, 0.0);
    const auto f0 = PiecewiseControl::constant(0.0, cfg.time, 16);
    AscentOptions opts;
    opts.max_iters = 30;
    const auto trace = gradient_ascent(cfg, f0, opts);
    CHECK(trace.points.front().grad_sup < 1e-10);
    CHECK(trace.final_j == doctest::Approx(std::cos(2.6) * std::cos(2.6)).epsilon(1e-10));
    CHECK(trace.reached_tol);  // zero gradient triggers the tolerance stop
}

TEST_CASE("monotone ascent reaching the global maximum") {
    const auto cfg = SystemConfig::make(0.7, 1.5, 1.0, 0.0);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto ctrl0 = random_control(cfg.time, 64, seed);
        AscentOptions opts;
        opts.max_iters = 500;
        const auto trace = gradient_ascent(cfg, ctrl0, opts);
        CHECK(trace.final_j >= 0.99);
        for (std::size_t i = 1; i < trace.points.size(); ++i)
            CHECK(trace.points[i].j >= trace.points[i - 1].j);
    }
    CHECK_THROWS_AS(gradient_ascent(cfg, PiecewiseControl::constant(0.0, 1.0, 4), {}),
                    std::invalid_argument);
}

TEST_CASE("saddle probe matches hessian eigenvalues in D2'''") {
    const auto cfg = SystemConfig::make(2.8, 0.45, 1.0, 0.0);
    const auto rows = saddle_probe(cfg, 1e-2, 6, 64);
    REQUIRE(rows.size() >= 4);
    bool pos = false, neg = false;
    for (const auto& r : rows) {
        if (std::abs(r.eigenvalue) > 1e-3) {
            CHECK(std::abs(r.q - r.eigenvalue) / std::abs(r.eigenvalue) < 0.05);
            CHECK((r.q > 0) == (r.eigenvalue > 0));
        }
        pos |= r.q > 0;
        neg |= r.q < 0;
        // probe symmetry: the odd part of J(+eps), J(-eps) is higher order
        const double second = r.j_plus + r.j_minus;
        const double asym = std::abs(r.j_plus - r.j_minus);
        CHECK(asym < 0.1 * std::max(std::abs(second), 1e-12) + 1e-9);
    }
    CHECK(pos);
    CHECK(neg);
    CHECK_THROWS_AS(saddle_probe(cfg, 0.5, 3, 64), std::invalid_argument);
}

TEST_CASE("probe on the global-maximum diagonal is non-positive") {
    const auto cfg = SystemConfig::make(2.3, M_PI - 2.3, 1.0, 0.0);
    const auto rows = saddle_probe(cfg, 1e-2, 5, 64);
    for (const auto& r : rows) CHECK(r.q < 1e-6);
}
