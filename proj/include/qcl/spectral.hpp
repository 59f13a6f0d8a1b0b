#pragma once
// Nystrom discretization of symmetric integral operators on [0,T] and a dense
// symmetric eigensolver (cyclic Jacobi) for the full spectrum.

#include <cstddef>
#include <string>
#include <vector>

#include "qcl/objective.hpp"

namespace qcl {

enum class QuadratureScheme { trapezoid, gauss_legendre };

// Symmetrically weighted Nystrom matrix A_ij = sqrt(w_i) k(t_i,t_j) sqrt(w_j),
// similar to the plain Nystrom matrix, so its spectrum approximates the
// operator spectrum while staying symmetric.
struct DiscretizedOperator {
    std::size_t n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> matrix;  // n*n, row-major, symmetric
    std::string kernel_form;

    double at(std::size_t i, std::size_t j) const { return matrix[i * n + j]; }
    double trace() const;
};

DiscretizedOperator discretize(const KernelSpec& kernel, double domain_length, std::size_t n,
                               QuadratureScheme scheme = QuadratureScheme::trapezoid);

// sum_i w_i k(t_i, t_i); equals the matrix trace by construction.
double operator_trace(const DiscretizedOperator& op);

struct EigenSolveOptions {
    bool want_vectors = false;
    std::size_t max_sweeps = 100;
    double off_norm_factor = 1e-12;  // stop when off-Frobenius < factor * ||A||_F
    // detect A_ij == A_{n-1-i,n-1-j} and solve the two reflection blocks
    // separately (exact transformation; spectrum unchanged)
    bool allow_reflection_split = true;
};

struct EigenDecomposition {
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // row k = eigenvector for values[k]; empty unless requested
    std::size_t n = 0;
    std::size_t sweeps = 0;
    double off_norm = 0.0;
    bool used_reflection_split = false;
};

// All n eigenvalues, descending. Throws on convergence failure (cap reached
// with the off-diagonal norm still above threshold).
std::vector<double> sym_eigen(const DiscretizedOperator& op);
EigenDecomposition sym_eigen_full(const DiscretizedOperator& op, const EigenSolveOptions& opts);

// Jacobi on a raw symmetric matrix (used by tests and the split path).
EigenDecomposition jacobi_eigen(std::vector<double> a, std::size_t n, const EigenSolveOptions& opts);

struct SpectrumReport {
    std::string provenance;             // "numeric" | "analytic"
    std::vector<double> eigenvalues;    // descending
    std::size_t n_pos = 0, n_neg = 0, n_zero = 0;
    double trace = 0.0;
    std::size_t n_nodes = 0;
    double tau = 0.0;
};

// Counts signs of eigenvalues with |x| > tau; |x| <= tau counted as zero.
SpectrumReport spectrum_report(const std::vector<double>& eigenvalues, double tau,
                               const std::string& provenance);

// Gauss-Legendre nodes/weights on [a, b] (Newton iteration on P_n roots).
void gauss_legendre_rule(std::size_t n, double a, double b, std::vector<double>& nodes,
                         std::vector<double>& weights);

}  // namespace qcl
