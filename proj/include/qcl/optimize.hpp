#pragma once
// Empirical landscape probing: monotone gradient ascent on J_W and
// second-order probes along discretized Hessian eigendirections at f0.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qcl/objective.hpp"

namespace qcl {

struct AscentOptions {
    std::size_t max_iters = 500;
    double step0 = 1.0;
    double tol = 1e-8;              // stop when the gradient sup-norm drops below
    std::size_t snapshot_every = 0; // 0 = keep only the final control
};

struct AscentPoint {
    std::size_t iter = 0;
    double j = 0.0;
    double grad_sup = 0.0;
    double step = 0.0;
};

struct AscentTrace {
    std::vector<AscentPoint> points;
    std::vector<std::pair<std::size_t, PiecewiseControl>> snapshots;
    PiecewiseControl final_control;
    double final_j = 0.0;
    bool reached_tol = false;
    std::size_t iters = 0;
};

// Backtracking gradient ascent (strict increase per accepted step, factor-1/2
// halving, gentle re-expansion). Pre: at least 8 segments.
AscentTrace gradient_ascent(const SystemConfig& cfg, const PiecewiseControl& ctrl0,
                            const AscentOptions& opts = {});

// Uniform random control in [-1, 1]^segments, seeded.
PiecewiseControl random_control(double total_time, std::size_t segments, std::uint64_t seed);

struct ProbeRow {
    double eigenvalue = 0.0;   // numeric Hessian eigenvalue
    double q = 0.0;            // fitted quadratic coefficient
    double j_plus = 0.0;       // J[f0 + eps e]
    double j_minus = 0.0;      // J[f0 - eps e]
};

// Perturbs f0 = 0 along the top-k eigenvectors (by |eigenvalue|) of the
// discretized Hessian, averaged onto `segments` piecewise values and
// L2-normalized; fits q from the symmetric second difference.
// Pre: eps in (1e-4, 1e-1); label not Excluded.
std::vector<ProbeRow> saddle_probe(const SystemConfig& cfg, double eps, std::size_t k,
                                   std::size_t segments = 64);

void write_ascent_csv(const AscentTrace& trace, const std::string& path);

}  // namespace qcl
