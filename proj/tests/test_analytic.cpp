#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "qcl/analytic.hpp"
#include "qcl/spectral.hpp"

using namespace qcl;

namespace {

// test-local bisection, independent of the library's root machinery
double bisect_fn(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double f1_scale(double a, double pw, double T) {
    return 2 * std::abs(a) + (a * a + 1) * std::abs(std::sin(2 * a * T) * std::sin(2 * pw)) +
           2 * std::abs(a * std::cos(2 * a * T) * std::cos(2 * pw));
}

// ||K g - mu g|| / ||g|| with K applied by direct quadrature (Nystrom oracle)
double nystroem_residual(const SystemConfig& cfg, const Eigenfunction& ef, double mu,
                         std::size_t n) {
    const double T = cfg.time;
    const double h = T / static_cast<double>(n - 1);
    const double phi = cfg.phi();
    const double sp = std::sin(phi);
    std::vector<double> nodes(n), w(n, h), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = static_cast<double>(i) * h;
        g[i] = ef.g(nodes[i]);
    }
    w[0] = w[n - 1] = 0.5 * h;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += w[j] * (-std::cos(2.0 * std::abs(nodes[i] - nodes[j]) + phi) / sp) * g[j];
        const double r = acc - mu * g[i];
        num += w[i] * r * r;
        den += w[i] * g[i] * g[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("classify spec examples") {
    CHECK(classify(3 * M_PI / 4, M_PI / 8) == DomainLabel::D1);
    CHECK(classify(M_PI, 1.0) == DomainLabel::D4);
    CHECK(classify(2.8, -std::tan(2.8)) == DomainLabel::D2pp);
    CHECK(classify(2.8, 0.35) == DomainLabel::D2p);
    CHECK(classify(2.8, 0.45) == DomainLabel::D2ppp);
    CHECK(classify(0.3, 0.3) == DomainLabel::D3_low);
    CHECK(classify(0.3, 1.4) == DomainLabel::D3_high);
    CHECK(classify(M_PI_2, 0.7) == DomainLabel::D1_phi_half);
    CHECK(classify(2.3, M_PI - 2.3) == DomainLabel::DiagMax);
    CHECK(classify(0.9, M_PI_2 - 0.9) == DomainLabel::DiagMin);
    CHECK(classify(M_PI, M_PI_2) == DomainLabel::DiagMin);  // phi_w + T = 3 pi / 2
    CHECK_THROWS_AS(classify(3.5, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(classify(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("classify covers every rectangle point") {
    for (int i = 1; i <= 60; ++i)
        for (int j = 1; j <= 30; ++j) CHECK_NOTHROW(classify(M_PI * i / 60.0, M_PI_2 * j / 30.0));
}

TEST_CASE("F1 closed-form zeros") {
    CHECK(F1(0.0, 1.234, 0.77) == 0.0);
    CHECK(std::abs(F1(2.0, M_PI, M_PI_2)) < 1e-12);  // D4 root a = pi n / T
    for (int n = 1; n <= 3; ++n) {
        const double T = 0.61;
        const double a = (2 * M_PI * n - M_PI) / (2 * T);
        CHECK(std::abs(F1(a, M_PI_2, T)) < 1e-11 * f1_scale(a, M_PI_2, T));
    }
}

TEST_CASE("F2 behavior") {
    CHECK(F2(0.0, 1.0, 0.5) == 0.0);
    for (double a : {0.3, 1.0, 2.5}) {
        CHECK(F2(a, M_PI, 0.6) < 0.0);  // no positive roots on D4
        CHECK(F2(a, M_PI, 0.6) ==
              doctest::Approx(2 * a * (1 - std::cosh(2 * a * 0.6))).epsilon(1e-10));
    }
    bool overflow = false;
    const double v = F2(400.0, 1.0, 0.5, &overflow);
    CHECK(overflow);
    CHECK(std::isinf(v));
}

TEST_CASE("delta_lambda1") {
    CHECK(std::abs(delta_lambda1(M_PI, 0.8)) < 1e-15);
    CHECK(std::abs(delta_lambda1(3 * M_PI / 4, 1.0)) < 1e-14);
    CHECK(delta_lambda1(M_PI_2, 0.37) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("lemma gates against dense-sampling oracle") {
    auto oracle = [](double alpha, double T, bool tan_form) {
        int count = 0;
        auto f = [&](double x) {
            return alpha * x - (tan_form ? std::tan(T * x) : 1.0 / std::tan(T * x));
        };
        double prev = f(1e-7);
        for (int i = 1; i <= 20000; ++i) {
            const double x = 1e-7 + (1.0 - 2e-7) * i / 20000.0;
            const double v = f(x);
            if ((v < 0) != (prev < 0)) ++count;
            prev = v;
        }
        return count;
    };
    std::uint64_t state = 7;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    for (int rep = 0; rep < 400; ++rep) {
        const double T = 0.05 + next() * (M_PI_2 - 0.1);
        const double alpha = -2.0 + next() * (std::tan(T) + 4.0);
        if (std::abs(alpha - T) > 1e-3 && std::abs(alpha - std::tan(T)) > 1e-3)
            CHECK(lemma_tan_root_count(alpha, T) == oracle(alpha, T, true));
        if (std::abs(alpha - 1.0 / std::tan(T)) > 1e-3)
            CHECK(lemma_cot_root_count(alpha, T) == oracle(alpha, T, false));
    }
    CHECK_THROWS_AS(lemma_tan_root_count(0.5, 2.0), std::invalid_argument);
}

TEST_CASE("transcendental roots per domain") {
    // D2 sample (2.8, 0.5): eq1 has exactly one root in (0,1), one per bracket
    {
        const auto roots = transcendental_roots(EquationTag::eq1, 2.8, 0.5, 10);
        int in01 = 0;
        for (const auto& r : roots)
            if (r.a < 1.0) ++in01;
        CHECK(in01 == 1);
        for (std::size_t n = 1; n <= 10; ++n) {
            int c = 0;
            for (const auto& r : roots)
                if (r.index == n) ++c;
            CHECK(c == 1);
        }
    }
    // D3: eq2 has no root in (0,1)
    for (auto [pw, t] :
         std::vector<std::pair<double, double>>{{0.3, 0.3}, {1.2, 0.2}, {0.7, 0.9}}) {
        const auto roots = transcendental_roots(EquationTag::eq2, pw, t, 6);
        for (const auto& r : roots) CHECK(r.a > 1.0);
    }
    // eq12 at (0.3, 0.3): independent bisection oracle on x cot(pw) = coth(T x);
    // frozen value computed by that oracle ahead of the build
    {
        const auto roots = transcendental_roots(EquationTag::eq12, 0.3, 0.3, 10);
        REQUIRE(roots.size() == 1);
        const double oracle = bisect_fn(
            [](double x) { return x / std::tan(0.3) - 1.0 / std::tanh(0.3 * x); }, 0.5, 4.0);
        CHECK(roots[0].a == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(roots[0].a == doctest::Approx(1.0314167468199895).epsilon(1e-12));
        CHECK(roots[0].mu_k == doctest::Approx(0.4845382615767898).epsilon(1e-12));
        CHECK(roots[0].residual < 1e-12);
    }
    // eq11/eq12 produce at most one positive root, none where excluded
    CHECK(transcendental_roots(EquationTag::eq11, 0.3, 0.3, 5).empty());   // D3
    CHECK(transcendental_roots(EquationTag::eq12, 2.8, 0.45, 5).empty());  // D2
    CHECK(transcendental_roots(EquationTag::eq11, 2.8, 0.45, 5).size() == 1);  // D2'''
    CHECK(transcendental_roots(EquationTag::eq11, 2.8, 0.35, 5).empty());  // D2'

    CHECK_THROWS_AS(transcendental_roots(EquationTag::eq2, M_PI_2, 0.5, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(transcendental_roots(EquationTag::eq1, M_PI, 0.5, 5), std::invalid_argument);
}

TEST_CASE("roots agree with a pole-split bisection on the paper's cot form") {
    const double pw = 2.6, T = 0.8;
    const auto roots = transcendental_roots(EquationTag::eq1, pw, T, 5);
    const double cw = 1.0 / std::tan(pw);
    for (const auto& r : roots) {
        auto f = [&](double x) { return -x * cw - 1.0 / std::tan(x * T); };
        const double lo = r.bracket_lo + 1e-9 * (r.bracket_hi - r.bracket_lo);
        const double hi = r.bracket_hi - 1e-9 * (r.bracket_hi - r.bracket_lo);
        const double oracle = bisect_fn(f, lo, hi);
        CHECK(r.a == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("bracket and residual invariants across parameters") {
    std::uint64_t state = 13;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    for (int rep = 0; rep < 8; ++rep) {
        const double pw = 0.15 + next() * (M_PI - 0.3);
        const double t = 0.1 + next() * (M_PI_2 - 0.2);
        if (std::abs(pw - M_PI_2) < 0.05 || std::abs(pw - M_PI) < 0.05) continue;
        for (auto tag : {EquationTag::eq1, EquationTag::eq2}) {
            for (const auto& r : transcendental_roots(tag, pw, t, 50)) {
                CHECK(r.a > r.bracket_lo);
                CHECK(r.a < r.bracket_hi);
                CHECK(r.residual < 1e-10 * f1_scale(r.a, pw, t));
                const double d = 1e-6 * (r.bracket_hi - r.bracket_lo);
                CHECK(F1(r.a - d, pw, t) * F1(r.a + d, pw, t) < 0.0);  // simple root
            }
        }
    }
}

TEST_CASE("closed-form roots") {
    const auto d4 = closed_form_roots(DomainLabel::D4, M_PI_2, 3);
    REQUIRE(d4.size() == 3);
    CHECK(d4[0].a == doctest::Approx(2.0));
    CHECK(d4[1].a == doctest::Approx(4.0));
    CHECK(d4[2].a == doctest::Approx(6.0));
    CHECK(d4[0].mu_k == doctest::Approx(-1.0 / 3.0));
    CHECK(d4[1].mu_k == doctest::Approx(-1.0 / 15.0));
    CHECK(d4[2].mu_k == doctest::Approx(-1.0 / 35.0));
    for (const auto& r : d4) {
        CHECK(std::abs(F1(r.a, M_PI, M_PI_2)) < 1e-12);
        CHECK(r.multiplicity == 2);
    }

    const auto dh = closed_form_roots(DomainLabel::D1_phi_half, M_PI / 4, 3);
    CHECK(dh[0].a == doctest::Approx(2.0));
    CHECK(dh[1].a == doctest::Approx(6.0));
    CHECK(dh[2].a == doctest::Approx(10.0));

    CHECK_THROWS_AS(closed_form_roots(DomainLabel::D1, 0.5, 3), std::invalid_argument);
}

TEST_CASE("eigenfunctions satisfy the operator equation") {
    // oscillatory root in D3
    {
        const auto cfg = SystemConfig::make(0.3, 0.3, 1.0, 0.0);
        const auto roots = transcendental_roots(EquationTag::eq1, 0.3, 0.3, 2);
        REQUIRE(!roots.empty());
        const auto ef = eigenfunction_for_root(roots[0], 0.3, 0.3);
        CHECK(nystroem_residual(cfg, ef, roots[0].mu_k, 2000) < 1e-6);
        for (double t : {0.05, 0.11, 0.2, 0.28})
            CHECK(std::abs(ef.h_second(t) + 4.0 * ef.h(t) - 4.0 * ef.g(t)) < 1e-8);
        double nrm = 0.0;
        const int nn = 20000;
        for (int i = 0; i <= nn; ++i) {
            const double t = 0.3 * i / nn;
            nrm += ((i == 0 || i == nn) ? 0.5 : 1.0) * ef.g(t) * ef.g(t);
        }
        CHECK(nrm * 0.3 / nn == doctest::Approx(1.0).epsilon(1e-6));
    }
    // lambda = 1 at D4: the constant family, K g = g
    {
        const auto cfg = SystemConfig::make(M_PI, 0.7, 1.0, 0.0);
        RootRecord rec;
        rec.tag = EquationTag::lambda1;
        rec.lambda = 1.0;
        rec.mu_k = 1.0;
        const auto ef = eigenfunction_for_root(rec, M_PI, 0.7);
        CHECK(ef.rank == 1);
        CHECK(std::abs(ef.c) < 1e-9);
        CHECK(nystroem_residual(cfg, ef, 1.0, 1500) < 1e-6);
        for (double t : {0.1, 0.3, 0.6})
            CHECK(std::abs(ef.h_second(t) + 4.0 * ef.h(t) - 4.0 * ef.g(t)) < 1e-10);
    }
    // lambda = 1 at D2'': linear eigenfunction
    {
        const double pw = 2.8, t = -std::tan(2.8);
        const auto cfg = SystemConfig::make(pw, t, 1.0, 0.0);
        RootRecord rec;
        rec.tag = EquationTag::lambda1;
        rec.lambda = 1.0;
        rec.mu_k = 1.0;
        const auto ef = eigenfunction_for_root(rec, pw, t);
        CHECK(nystroem_residual(cfg, ef, 1.0, 1500) < 1e-6);
    }
    // hyperbolic root in D3
    {
        const auto cfg = SystemConfig::make(0.3, 0.3, 1.0, 0.0);
        const auto roots = transcendental_roots(EquationTag::eq12, 0.3, 0.3, 2);
        REQUIRE(roots.size() == 1);
        const auto ef = eigenfunction_for_root(roots[0], 0.3, 0.3);
        CHECK(nystroem_residual(cfg, ef, roots[0].mu_k, 2000) < 1e-6);
        for (double t : {0.05, 0.15, 0.25})
            CHECK(std::abs(ef.h_second(t) + 4.0 * ef.h(t) - 4.0 * ef.g(t)) < 1e-8);
    }
    // closed-form root: rank-0 system, two-dimensional eigenspace
    {
        const auto cfg = SystemConfig::make(M_PI, M_PI_2, 1.0, 0.0);
        const auto roots = closed_form_roots(DomainLabel::D4, M_PI_2, 2);
        const auto ef = eigenfunction_for_root(roots[0], M_PI, M_PI_2);
        CHECK(ef.rank == 0);
        CHECK(nystroem_residual(cfg, ef, roots[0].mu_k, 2000) < 1e-6);
    }
    // a non-root is rejected
    {
        RootRecord fake;
        fake.tag = EquationTag::eq1;
        fake.a = 0.77;
        fake.lambda = 1 - fake.a * fake.a;
        fake.mu_k = 1.0 / fake.lambda;
        CHECK_THROWS_AS(eigenfunction_for_root(fake, 0.3, 0.3), std::invalid_argument);
    }
}

TEST_CASE("analytic spectrum per domain") {
    struct Sample {
        double pw, t;
        DomainLabel label;
        std::size_t positives;
    };
    const Sample samples[] = {
        {3 * M_PI / 4, M_PI / 8, DomainLabel::D1, 0},
        {M_PI_2, 0.7, DomainLabel::D1_phi_half, 0},
        {2.8, 0.35, DomainLabel::D2p, 2},
        {2.8, -std::tan(2.8), DomainLabel::D2pp, 2},
        {2.8, 0.45, DomainLabel::D2ppp, 2},
        {0.3, 0.3, DomainLabel::D3_low, 1},
        {0.3, 1.4, DomainLabel::D3_high, 1},
        {M_PI, 0.7, DomainLabel::D4, 1},
    };
    for (const auto& s : samples) {
        const auto cfg = SystemConfig::make(s.pw, s.t, 1.0, 0.0);
        const auto sp = analytic_spectrum(cfg, 40);
        CHECK(sp.label == s.label);
        CHECK(sp.positive_count_k == s.positives);
        for (const auto& r : sp.records)
            CHECK(r.mu_hess == doctest::Approx(sp.factor * r.mu_k).epsilon(1e-12));
        // trace consistency: sum of mu_K (with multiplicity) approaches -T cot(phi)
        double sum = 0.0;
        for (const auto& r : sp.records) sum += r.multiplicity * r.mu_k;
        const double trace = -s.t / std::tan(-(s.pw + s.t));
        const double tail = 3.0 * 2.0 * s.t * s.t / (M_PI * M_PI * 39.0);
        CHECK(std::abs(sum - trace) < tail);
    }
    CHECK_THROWS_AS(analytic_spectrum(SystemConfig::make(2.3, M_PI - 2.3, 1.0, 0.0), 10),
                    std::invalid_argument);
}

TEST_CASE("D2pp includes the lambda=1 eigenvalue") {
    const auto sp = analytic_spectrum(SystemConfig::make(2.8, -std::tan(2.8), 1.0, 0.0), 20);
    bool has_one = false;
    for (const auto& r : sp.records)
        if (r.tag == EquationTag::lambda1) {
            has_one = true;
            CHECK(r.mu_k == 1.0);
            CHECK(r.multiplicity == 1);
        }
    CHECK(has_one);
}

TEST_CASE("eigenvalue bounds") {
    RootRecord r;
    r.tag = EquationTag::eq1;
    r.bracket_lo = 2 * M_PI;
    r.bracket_hi = 3 * M_PI;
    r.a = 2.5 * M_PI;
    r.lambda = 1 - r.a * r.a;
    r.mu_k = 1 / r.lambda;
    const auto b = eigenvalue_bounds(r);
    CHECK(b.lo == doctest::Approx(1.0 / (9 * M_PI * M_PI - 1)));
    CHECK(b.hi == doctest::Approx(1.0 / (4 * M_PI * M_PI - 1)));
    CHECK_FALSE(b.positive);

    // self-consistency: every computed root's mu_K lies inside its bound
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            const double pw = M_PI * (i - 0.5) / 20.0;
            const double t = M_PI_2 * (j - 0.5) / 20.0;
            if (!spectrum_defined(classify(pw, t))) continue;
            const auto sp = analytic_spectrum(SystemConfig::make(pw, t, 1.0, 0.0), 10);
            for (const auto& rec : sp.records) {
                const auto bd = eigenvalue_bounds(rec);
                CHECK(std::abs(rec.mu_k) >= bd.lo - 1e-12);
                CHECK(std::abs(rec.mu_k) <= bd.hi + 1e-12);
                CHECK(bd.positive == (rec.mu_k > 0));
            }
        }
    }
}

TEST_CASE("continuity across D2ppp -> D4") {
    // the largest positive mu_K tends to the D4 lambda=1 eigenvalue; the
    // second positive vanishes toward the essential spectrum at 0
    const double t = 0.45;
    double prev_gap = 1e9;
    for (double eps : {0.1, 0.03, 0.01, 0.003}) {
        const auto sp = analytic_spectrum(SystemConfig::make(M_PI - eps, t, 1.0, 0.0), 10);
        std::vector<double> pos;
        for (const auto& r : sp.records)
            if (r.mu_k > 0) pos.push_back(r.mu_k);
        REQUIRE(pos.size() == 2);
        std::sort(pos.rbegin(), pos.rend());
        const double gap = std::abs(pos[0] - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        if (eps == 0.003) {
            CHECK(gap < 1e-2);
            CHECK(pos[1] < 1e-3);
        }
    }
}
