#include "qcl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qcl/analytic.hpp"
#include "qcl/spectral.hpp"

namespace qcl {

namespace {

constexpr double kGx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                           0.8611363115940526};
constexpr double kGw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                           0.3478548451374538};

// per-segment average of the gradient kernel (4-point Gauss per segment)
std::vector<double> segment_gradient(const SystemConfig& cfg, const PiecewiseControl& ctrl) {
    const std::size_t m = ctrl.segments();
    const double dt = ctrl.dt();
    std::vector<double> nodes;
    nodes.reserve(m * 4);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = static_cast<double>(k) * dt;
        for (int i = 0; i < 4; ++i) nodes.push_back(a + 0.5 * dt * (kGx[i] + 1.0));
    }
    const auto cache = AdjointCache::build(cfg, ctrl, nodes);
    std::vector<double> g(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double seg = 0.0;
        for (int i = 0; i < 4; ++i) seg += kGw[i] * gradient_kernel_value(cache, k * 4 + i);
        g[k] = 0.5 * seg;  // average over the segment = integral / dt
    }
    return g;
}

}  // namespace

PiecewiseControl random_control(double total_time, std::size_t segments, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    PiecewiseControl c;
    c.total_time = total_time;
    c.values.resize(segments);
    for (auto& x : c.values) x = uni(rng);
    return c;
}

AscentTrace gradient_ascent(const SystemConfig& cfg, const PiecewiseControl& ctrl0,
                            const AscentOptions& opts) {
    if (ctrl0.segments() < 8)
        throw std::invalid_argument("gradient_ascent: need at least 8 segments");

    AscentTrace trace;
    PiecewiseControl f = ctrl0;
    double j = objective_of_control(cfg, f);
    double step = opts.step0;

    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        const auto grad = segment_gradient(cfg, f);
        double sup = 0.0;
        for (double g : grad) sup = std::max(sup, std::abs(g));
        trace.points.push_back({it, j, sup, step});
        if (opts.snapshot_every && it % opts.snapshot_every == 0)
            trace.snapshots.emplace_back(it, f);
        trace.iters = it;
        if (sup < opts.tol) {
            trace.reached_tol = true;
            break;
        }

        // backtracking: halve until the step increases J
        bool improved = false;
        PiecewiseControl cand = f;
        while (step > 1e-14) {
            for (std::size_t k = 0; k < f.values.size(); ++k)
                cand.values[k] = f.values[k] + step * grad[k];
            const double jc = objective_of_control(cfg, cand);
            if (jc > j) {
                f = cand;
                j = jc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;  // numerical floor: no increasing step exists
        step *= 1.3;
    }
    trace.final_control = f;
    trace.final_j = j;
    return trace;
}

std::vector<ProbeRow> saddle_probe(const SystemConfig& cfg, double eps, std::size_t k,
                                   std::size_t segments) {
    if (!(eps > 1e-4) || !(eps < 1e-1))
        throw std::invalid_argument("saddle_probe: eps must lie in (1e-4, 1e-1)");
    if (classify(cfg.phi_w, cfg.time) == DomainLabel::Excluded)
        throw std::invalid_argument("saddle_probe: excluded parameter point");

    // nodes aligned with segment boundaries: 16 intervals per segment
    const std::size_t n = 16 * segments + 1;
    const auto op = discretize(hessian_at_f0_kernel(cfg), cfg.time, n);
    EigenSolveOptions eo;
    eo.want_vectors = true;
    const auto dec = sym_eigen_full(op, eo);

    std::vector<std::size_t> order(dec.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(dec.values[a]) > std::abs(dec.values[b]);
    });
    k = std::min(k, order.size());

    const PiecewiseControl f0 = PiecewiseControl::constant(0.0, cfg.time, segments);
    const double j0 = objective_of_control(cfg, f0);
    const double dt = cfg.time / static_cast<double>(segments);

    std::vector<ProbeRow> rows;
    rows.reserve(k);
    for (std::size_t idx = 0; idx < k; ++idx) {
        const std::size_t e = order[idx];
        const double* vec = &dec.vectors[e * n];

        // eigenvector -> function values -> piecewise averages
        std::vector<double> avg(segments, 0.0);
        const double h = cfg.time / static_cast<double>(n - 1);
        for (std::size_t seg = 0; seg < segments; ++seg) {
            double acc = 0.0;
            for (std::size_t i = 16 * seg; i <= 16 * (seg + 1); ++i) {
                const double g = vec[i] / std::sqrt(op.weights[i]);
                const double w = (i == 16 * seg || i == 16 * (seg + 1)) ? 0.5 * h : h;
                acc += w * g;
            }
            avg[seg] = acc / dt;
        }
        double nrm2 = 0.0;
        for (double x : avg) nrm2 += x * x * dt;
        const double nrm = std::sqrt(nrm2);
        if (nrm < 1e-12) continue;

        PiecewiseControl up = f0, dn = f0;
        for (std::size_t seg = 0; seg < segments; ++seg) {
            up.values[seg] = eps * avg[seg] / nrm;
            dn.values[seg] = -eps * avg[seg] / nrm;
        }
        ProbeRow row;
        row.eigenvalue = dec.values[e];
        row.j_plus = objective_of_control(cfg, up);
        row.j_minus = objective_of_control(cfg, dn);
        row.q = (row.j_plus - 2.0 * j0 + row.j_minus) / (eps * eps);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qcl
