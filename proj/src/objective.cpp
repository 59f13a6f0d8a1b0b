#include "qcl/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace qcl {

namespace {

Su2Matrix commutator(const Su2Matrix& a, const Su2Matrix& b) { return a * b - b * a; }

cplx tr(const Su2Matrix& a) { return a.trace(); }

// V_t = U_t^dag V U_t for the exact propagator of ctrl at time t.
Su2Matrix conjugated_coupling(const Su2Matrix& u_t, const Su2Matrix& v) {
    return u_t.adjoint() * v * u_t;
}

}  // namespace

double SystemConfig::v() const { return std::hypot(vx, vy); }
double SystemConfig::phi() const { return -(phi_w + time); }
double SystemConfig::f0() const { return special_control(h0(), coupling()); }
double SystemConfig::t0() const { return special_time(h0(), coupling(), f0()); }
Su2Matrix SystemConfig::h0() const { return pauli(PauliAxis::z); }

Su2Matrix SystemConfig::coupling() const {
    return pauli(PauliAxis::x) * cplx(vx, 0) + pauli(PauliAxis::y) * cplx(vy, 0);
}

Su2Matrix SystemConfig::gate() const {
    Su2Matrix w;
    w.m[0] = std::exp(cplx(0, phi_w));
    w.m[3] = std::exp(cplx(0, -phi_w));
    return w;
}

SystemConfig SystemConfig::make(double phi_w, double time, double vx, double vy) {
    if (!(phi_w > 0.0) || phi_w > M_PI + 1e-12)
        throw std::invalid_argument("SystemConfig: phi_w must lie in (0, pi]");
    if (!(time > 0.0)) throw std::invalid_argument("SystemConfig: T must be positive");
    if (!(vx * vx + vy * vy > 0.0)) throw std::invalid_argument("SystemConfig: v must be nonzero");
    SystemConfig cfg;
    cfg.phi_w = phi_w;
    cfg.time = time;
    cfg.vx = vx;
    cfg.vy = vy;
    return cfg;
}

SpecialControlReadings special_control_readings(const Su2Matrix& h0, const Su2Matrix& v) {
    const double comm = commutator(h0, v).max_abs();
    const double scale = std::max(1.0, h0.max_abs() * v.max_abs());
    if (comm <= 1e-12 * scale)
        throw std::invalid_argument("special_control: [H0, V] = 0 (uncontrollable pair)");

    const cplx num = -tr(h0) * tr(v) + cplx(2, 0) * tr(h0 * v);
    const cplx trv = tr(v);
    const cplx trv2 = tr(v * v);
    const cplx den = trv * trv - cplx(2, 0) * trv2;          // (Tr V)^2 - 2 Tr(V^2)
    const cplx den_printed = trv2 * trv2 - cplx(2, 0) * trv2; // (Tr V^2)^2 - 2 Tr(V^2)

    if (std::abs(den) <= 1e-14 * scale)
        throw std::invalid_argument("special_control: vanishing denominator");

    SpecialControlReadings out;
    const cplx f0 = num / den;
    out.f0 = f0.real();
    out.printed_defined = std::abs(den_printed) > 1e-14 * scale;
    out.f0_printed = out.printed_defined ? (num / den_printed).real() : 0.0;
    out.readings_agree = out.printed_defined &&
                         std::abs(out.f0 - out.f0_printed) <= 1e-12 * (1.0 + std::abs(out.f0));
    return out;
}

double special_control(const Su2Matrix& h0, const Su2Matrix& v) {
    return special_control_readings(h0, v).f0;
}

double special_time(const Su2Matrix& h0, const Su2Matrix& v, double f0) {
    const Su2Matrix eye = Su2Matrix::identity();
    const Su2Matrix a =
        h0 - eye * (tr(h0) * cplx(0.5, 0)) + (v - eye * (tr(v) * cplx(0.5, 0))) * cplx(f0, 0);
    // traceless Hermitian 2x2 has eigenvalues +-r
    const double cx = a.m[1].real();
    const double cy = -a.m[1].imag();
    const double cz = a.m[0].real();
    const double r = std::sqrt(cx * cx + cy * cy + cz * cz);
    if (r <= 1e-14) throw std::invalid_argument("special_time: traceless part vanishes");
    return M_PI / (2.0 * r);
}

double objective(const Su2Matrix& u_final, const Su2Matrix& gate) {
    if (!u_final.is_unitary(1e-10) || !gate.is_unitary(1e-10))
        throw std::invalid_argument("objective: inputs must be unitary");
    const cplx t = tr(u_final * gate.adjoint());
    return 0.25 * std::norm(t);
}

double objective_of_control(const SystemConfig& cfg, const PiecewiseControl& ctrl) {
    const auto traj = propagate(ctrl, cfg.h0(), cfg.coupling());
    return objective(traj.final_unitary(), cfg.gate());
}

AdjointCache AdjointCache::build(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                                 const std::vector<double>& nodes) {
    const auto traj = propagate(ctrl, cfg.h0(), cfg.coupling(), nodes);
    AdjointCache c;
    c.y = cfg.gate().adjoint() * traj.final_unitary();
    c.tr_y = c.y.trace();
    c.nodes = nodes;
    const Su2Matrix v = cfg.coupling();
    c.v_at.reserve(nodes.size());
    for (double t : nodes) c.v_at.push_back(conjugated_coupling(traj.at_time(t), v));
    return c;
}

double gradient_kernel_value(const AdjointCache& cache, std::size_t node_index) {
    const cplx t1 = (cache.y * cache.v_at[node_index]).trace();
    return 0.5 * std::imag(std::conj(cache.tr_y) * t1);
}

std::vector<double> gradient_kernel(const SystemConfig& cfg, const PiecewiseControl& ctrl,
                                    const std::vector<double>& nodes) {
    const auto cache = AdjointCache::build(cfg, ctrl, nodes);
    std::vector<double> g(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) g[i] = gradient_kernel_value(cache, i);
    return g;
}

double hessian_kernel_value(const AdjointCache& cache, std::size_t i, std::size_t j) {
    // branch: larger-time V sits left in the product term
    const std::size_t a = (cache.nodes[j] >= cache.nodes[i]) ? i : j;  // min time
    const std::size_t b = (cache.nodes[j] >= cache.nodes[i]) ? j : i;  // max time
    const cplx t1 = (cache.y * cache.v_at[a]).trace();
    const cplx t2 = std::conj((cache.y * cache.v_at[b]).trace());
    const cplx t3 = (cache.y * cache.v_at[b] * cache.v_at[a]).trace();
    return 0.5 * std::real(t1 * t2 - t3 * std::conj(cache.tr_y));
}

double hessian_kernel(const SystemConfig& cfg, const PiecewiseControl& ctrl, double t, double s) {
    const auto cache = AdjointCache::build(cfg, ctrl, {t, s});
    const std::size_t i = 0;
    const std::size_t j = (std::abs(s - t) < 1e-15) ? 0 : 1;
    return hessian_kernel_value(cache, i, j);
}

double hessian_kernel_at_f0(const SystemConfig& cfg, double t, double s) {
    const double vv = cfg.v() * cfg.v();
    const double phi = cfg.phi();
    return -2.0 * vv * std::cos(phi) * std::cos(2.0 * std::abs(t - s) + phi);
}

KernelSpec hessian_at_f0_kernel(const SystemConfig& cfg) {
    KernelSpec k;
    const double scale = -2.0 * cfg.v() * cfg.v() * std::cos(cfg.phi());
    const double phi = cfg.phi();
    k.value = [scale, phi](double t, double s) {
        return scale * std::cos(2.0 * std::abs(t - s) + phi);
    };
    k.domain_length = cfg.time;
    k.form = "hess_at_f0";
    k.is_difference_cos = true;
    k.diff_scale = scale;
    k.diff_phase = phi;
    return k;
}

KernelSpec k_operator_kernel(const SystemConfig& cfg) {
    const double sp = std::sin(cfg.phi());
    if (std::abs(sp) < 1e-12)
        throw std::invalid_argument("k_operator_kernel: sin(phi) = 0, K undefined");
    KernelSpec k;
    const double scale = -1.0 / sp;
    const double phi = cfg.phi();
    k.value = [scale, phi](double t, double s) {
        return scale * std::cos(2.0 * std::abs(t - s) + phi);
    };
    k.domain_length = cfg.time;
    k.form = "k_operator";
    k.is_difference_cos = true;
    k.diff_scale = scale;
    k.diff_phase = phi;
    return k;
}

KernelSpec general_hessian_kernel(const SystemConfig& cfg, const PiecewiseControl& ctrl) {
    KernelSpec k;
    k.value = [cfg, ctrl](double t, double s) { return hessian_kernel(cfg, ctrl, t, s); };
    k.domain_length = cfg.time;
    k.form = "general";
    k.assemble_values = [cfg, ctrl](const std::vector<double>& nodes) {
        const auto cache = AdjointCache::build(cfg, ctrl, nodes);
        const std::size_t n = nodes.size();
        std::vector<double> vals(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double kij = hessian_kernel_value(cache, i, j);
                vals[i * n + j] = kij;
                vals[j * n + i] = kij;
            }
        }
        return vals;
    };
    return k;
}

}  // namespace qcl
