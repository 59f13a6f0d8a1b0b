#include "qcl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qcl/simd_kernels.hpp"

namespace qcl {

double DiscretizedOperator::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += matrix[i * n + i];
    return t;
}

double operator_trace(const DiscretizedOperator& op) { return op.trace(); }

void gauss_legendre_rule(std::size_t n, double a, double b, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    for (std::size_t i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * static_cast<double>(j) - 1.0) * z * p2 -
                      (static_cast<double>(j) - 1.0) * p3) /
                     static_cast<double>(j);
            }
            pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < std::numeric_limits<double>::epsilon()) break;
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

DiscretizedOperator discretize(const KernelSpec& kernel, double domain_length, std::size_t n,
                               QuadratureScheme scheme) {
    if (n < 2) throw std::invalid_argument("discretize: need at least 2 nodes");
    if (!(domain_length > 0.0)) throw std::invalid_argument("discretize: T must be positive");

    DiscretizedOperator op;
    op.n = n;
    op.kernel_form = kernel.form;

    if (scheme == QuadratureScheme::trapezoid) {
        const double h = domain_length / static_cast<double>(n - 1);
        op.nodes.resize(n);
        op.weights.assign(n, h);
        for (std::size_t i = 0; i < n; ++i) op.nodes[i] = static_cast<double>(i) * h;
        op.nodes[n - 1] = domain_length;
        op.weights[0] = op.weights[n - 1] = 0.5 * h;
    } else {
        gauss_legendre_rule(n, 0.0, domain_length, op.nodes, op.weights);
    }

    std::vector<double> sw(n);
    for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(op.weights[i]);

    op.matrix.assign(n * n, 0.0);

    if (kernel.is_difference_cos) {
        // k(t,s) = scale * cos(2(t-s) + phi) for t >= s: per row this is
        // cos(2t+phi)*cos(2s) + sin(2t+phi)*sin(2s), a two-term linear form
        std::vector<double> c2(n), s2(n);
        for (std::size_t j = 0; j < n; ++j) {
            c2[j] = std::cos(2.0 * op.nodes[j]);
            s2[j] = std::sin(2.0 * op.nodes[j]);
        }
        const auto& ops = kern::active();
        for (std::size_t i = 0; i < n; ++i) {
            const double alpha = std::cos(2.0 * op.nodes[i] + kernel.diff_phase);
            const double beta = std::sin(2.0 * op.nodes[i] + kernel.diff_phase);
            ops.scaled_rank2_row(&op.matrix[i * n], c2.data(), s2.data(), sw.data(), alpha, beta,
                                 kernel.diff_scale * sw[i], i + 1);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) op.matrix[i * n + j] = op.matrix[j * n + i];
        return op;
    }

    if (kernel.assemble_values) {
        const std::vector<double> vals = kernel.assemble_values(op.nodes);
        if (vals.size() != n * n) throw std::runtime_error("discretize: bad batch table size");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                op.matrix[i * n + j] = sw[i] * vals[i * n + j] * sw[j];
        // exact symmetrization against evaluator round-off
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = 0.5 * (op.matrix[i * n + j] + op.matrix[j * n + i]);
                op.matrix[i * n + j] = op.matrix[j * n + i] = v;
            }
        return op;
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = sw[i] * kernel.value(op.nodes[i], op.nodes[j]) * sw[j];
            op.matrix[i * n + j] = v;
            op.matrix[j * n + i] = v;
        }
    }
    return op;
}

SpectrumReport spectrum_report(const std::vector<double>& eigenvalues, double tau,
                               const std::string& provenance) {
    if (tau < 0.0) throw std::invalid_argument("spectrum_report: tau must be nonnegative");
    SpectrumReport r;
    r.provenance = provenance;
    r.eigenvalues = eigenvalues;
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), std::greater<>());
    r.tau = tau;
    r.trace = 0.0;
    for (double x : r.eigenvalues) {
        r.trace += x;
        if (x > tau)
            ++r.n_pos;
        else if (x < -tau)
            ++r.n_neg;
        else
            ++r.n_zero;
    }
    return r;
}

}  // namespace qcl
