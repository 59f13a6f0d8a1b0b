#pragma once
// Gate-fidelity objective J_W = |Tr(U_T W^dag)|^2 / 4 for the phase-shift gate
// class W = exp(i phi_w sigma_z), H0 = sigma_z, V = vx*sigma_x + vy*sigma_y:
// value, gradient kernel, Hessian kernel, and the closed forms at the special
// control f0 = 0.

#include <functional>
#include <string>
#include <vector>

#include "qcl/su2.hpp"

namespace qcl {

// Problem parameters plus every derived scalar used downstream.
struct SystemConfig {
    double phi_w = 0.0;   // gate angle, (0, pi]
    double time = 0.0;    // final time T > 0
    double vx = 1.0;
    double vy = 0.0;

    double v() const;                    // sqrt(vx^2 + vy^2)
    double phi() const;                  // -(phi_w + T)
    double f0() const;                   // special constant control (0 here)
    double t0() const;                   // special time (pi/2 here)
    Su2Matrix h0() const;                // sigma_z
    Su2Matrix coupling() const;          // vx*sigma_x + vy*sigma_y
    Su2Matrix gate() const;              // exp(i phi_w sigma_z), beta = 0

    static SystemConfig make(double phi_w, double time, double vx = 1.0, double vy = 0.0);
};

// f0 per the trace formula; denominator implemented as (Tr V)^2 - 2 Tr(V^2),
// the dimensionally consistent reading of the published expression.
// special_control_readings exposes both readings so callers can record when
// they disagree. Errors: [H0,V] = 0, or vanishing denominator.
double special_control(const Su2Matrix& h0, const Su2Matrix& v);

struct SpecialControlReadings {
    double f0 = 0.0;               // consistent reading
    double f0_printed = 0.0;       // literal printed denominator (Tr V^2)^2 - 2 Tr(V^2)
    bool readings_agree = true;    // within 1e-12 relative
    bool printed_defined = true;   // printed denominator nonzero
};
SpecialControlReadings special_control_readings(const Su2Matrix& h0, const Su2Matrix& v);

// T0 = pi / spread(H0 - I Tr H0/2 + f0 (V - I Tr V/2)), spread = lmax - lmin.
double special_time(const Su2Matrix& h0, const Su2Matrix& v, double f0);

// J_W in [0, 1]. Errors: non-unitary input.
double objective(const Su2Matrix& u_final, const Su2Matrix& gate);

// J_W[f] for a control, convenience wrapper around propagate + objective.
double objective_of_control(const SystemConfig& cfg, const PiecewiseControl& ctrl);

// Y = W^dag U_T and V_t = U_t^dag V U_t sampled at a fixed node set.
// Immutable after construction.
struct AdjointCache {
    Su2Matrix y;
    cplx tr_y;
    std::vector<double> nodes;
    std::vector<Su2Matrix> v_at;   // V_t per node

    static AdjointCache build(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                              const std::vector<double>& nodes);
};

// Gradient kernel (1/2) Im(Tr Y* Tr(Y V_t)) at each node.
std::vector<double> gradient_kernel(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                                    const std::vector<double>& nodes);
double gradient_kernel_value(const AdjointCache& cache, std::size_t node_index);

// Two-branch Hessian kernel at arbitrary control.
double hessian_kernel(const SystemConfig& cfg, const PiecewiseControl& ctrl, double t, double s);
// Same, against a cache whose nodes contain t and s (exact pair evaluation).
double hessian_kernel_value(const AdjointCache& cache, std::size_t i, std::size_t j);

// Closed form at f0 = 0: -2 v^2 cos(phi) cos(2|t-s| + phi).
double hessian_kernel_at_f0(const SystemConfig& cfg, double t, double s);

// Symmetric kernel handle on [0,T]^2 for the spectral module.
struct KernelSpec {
    std::function<double(double, double)> value;
    double domain_length = 0.0;
    std::string form;  // "hess_at_f0", "k_operator", "general", ...

    // set for pure difference kernels c * cos(2|t-s| + phi): enables the fast
    // assembly path and persymmetric eigensolving
    bool is_difference_cos = false;
    double diff_scale = 0.0;
    double diff_phase = 0.0;

    // optional batch evaluator: full n x n value table at the given nodes
    // (lets general-control kernels share one AdjointCache across the grid)
    std::function<std::vector<double>(const std::vector<double>&)> assemble_values;
};

// Hessian-at-f0 kernel for cfg.
KernelSpec hessian_at_f0_kernel(const SystemConfig& cfg);
// K = Hess / (v^2 sin 2phi), kernel -cos(2|t-s|+phi)/sin(phi).
// Errors if |sin phi| < 1e-12 (kernel undefined on phi_w + T = pi).
KernelSpec k_operator_kernel(const SystemConfig& cfg);
// General-control Hessian kernel (closure over an AdjointCache-free evaluator).
KernelSpec general_hessian_kernel(const SystemConfig& cfg, const PiecewiseControl& ctrl);

}  // namespace qcl
