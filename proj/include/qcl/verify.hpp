#pragma once
// Numeric-vs-analytic cross-validation at single parameter points and over
// (phi_w, T) grids, with CSV/JSON emission reproducing the phase-diagram
// geometry.

#include <cstddef>
#include <string>
#include <vector>

#include "qcl/analytic.hpp"
#include "qcl/spectral.hpp"

namespace qcl {

struct MatchedPair {
    double numeric = 0.0;
    double analytic = 0.0;
    double rel_err = 0.0;
};

struct ValidationRecord {
    double phi_w = 0.0, time = 0.0, v = 1.0;
    DomainLabel label = DomainLabel::Excluded;
    double j_at_f0 = 0.0;

    SpectrumReport numeric;        // Hessian spectrum at N
    SpectrumReport numeric_refined;  // at 2N
    AnalyticSpectrum analytic;

    std::vector<MatchedPair> matched;          // descending, Hessian units
    std::vector<double> unmatched_analytic;    // beyond numeric resolution

    int factor_sign = 0;                       // sign(v^2 sin 2phi)
    std::size_t finite_side_expected = 0;      // proposition count
    bool matches_propositions_with_factor = false;
    bool matches_theorem4_prose = false;
    bool refinement_stable = false;            // finite side identical at N and 2N
    double trace_error = 0.0;                  // |tr - (-2 v^2 cos^2 phi T)| / (1 + |target|)

    std::size_t n_nodes = 0;
    std::size_t n_max = 0;
    double rho = 0.0;
};

// Full record at one parameter point. match_tol: relative tolerance for
// greedy eigenvalue matching. Errors on non-spectral labels.
ValidationRecord cross_validate(const SystemConfig& cfg, std::size_t n_nodes, std::size_t n_max,
                                double rho = 1e-8, double match_tol = 1e-2);

struct SweepOptions {
    double phi_lo = 0.0, phi_hi = M_PI;       // cell-centered grid inside the ranges
    double t_lo = 0.0, t_hi = M_PI_2;
    std::size_t res_phi = 40, res_t = 20;
    double v = 1.0;
    std::size_t n_nodes = 200;
    std::size_t n_max = 30;
    double rho = 1e-8;
    std::size_t top_eigs = 6;                 // eigenvalues emitted per row
    std::size_t threads = 0;                  // 0 = hardware_concurrency
    std::string csv_path;                     // empty = skip
    std::string json_path;
    std::vector<std::pair<std::string, std::string>> metadata;  // provenance header
};

struct SweepResult {
    std::vector<ValidationRecord> records;    // row-major in (phi_w, T)
    std::size_t evaluated = 0;                // points with a defined spectrum
    std::size_t skipped = 0;                  // diagonal/excluded points
};

// One record per grid point (label-only for non-spectral labels), written in
// deterministic row-major order.
SweepResult grid_sweep(const SweepOptions& opts);

struct FiniteDiffReport {
    double max_rel_err_first = 0.0;
    double max_rel_err_second = 0.0;
    std::uint64_t seed = 0;
    double worst() const { return std::max(max_rel_err_first, max_rel_err_second); }
};

// Compares directional derivatives from the gradient/Hessian kernels against
// central differences of J_W over seeded random piecewise directions.
// Pre: eps in (1e-6, 1e-2).
FiniteDiffReport finite_diff_check(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                                   std::size_t directions, double eps, std::uint64_t seed = 12345);

// First and second directional derivative of J_W along a piecewise direction,
// from the kernels (segment-wise Gauss quadrature; diagonal cells split at the
// |t-s| kink). Exposed for tests and the finite-difference harness.
double directional_derivative(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                              const std::vector<double>& direction);
double second_directional_derivative(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                                     const std::vector<double>& direction);

void write_sweep_csv(const SweepResult& result, const SweepOptions& opts);
void write_sweep_json(const SweepResult& result, const SweepOptions& opts);

}  // namespace qcl
