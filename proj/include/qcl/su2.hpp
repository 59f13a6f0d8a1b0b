#pragma once
// 2x2 unitary dynamics of a driven qubit: Pauli algebra, exact Hermitian
// exponentials and piecewise-constant propagation.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qcl {

using cplx = std::complex<double>;

enum class PauliAxis { x, y, z };

// Dense 2x2 complex matrix, row-major.
struct Su2Matrix {
    std::array<cplx, 4> m{};

    cplx& operator()(int r, int c) { return m[2 * r + c]; }
    const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

    static Su2Matrix identity();
    static Su2Matrix zero();

    Su2Matrix adjoint() const;
    cplx trace() const { return m[0] + m[3]; }
    cplx det() const { return m[0] * m[3] - m[1] * m[2]; }

    Su2Matrix operator*(const Su2Matrix& o) const;
    Su2Matrix operator+(const Su2Matrix& o) const;
    Su2Matrix operator-(const Su2Matrix& o) const;
    Su2Matrix operator*(cplx a) const;

    // max entrywise |.| of (this - other)
    double max_abs_diff(const Su2Matrix& o) const;
    double max_abs() const;

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-12) const;
};

Su2Matrix pauli(PauliAxis axis);

// exp(-i H dt) for Hermitian H, via H = c0*I + c.sigma. Exact, no stepping.
// Throws std::invalid_argument if H is not Hermitian.
Su2Matrix expm_su2(const Su2Matrix& h, double dt);

// Real control on [0, T] as M uniform piecewise-constant segments:
// f(t) = values[k] on [k T/M, (k+1) T/M).
struct PiecewiseControl {
    double total_time = 0.0;
    std::vector<double> values;

    std::size_t segments() const { return values.size(); }
    double dt() const { return total_time / static_cast<double>(values.size()); }
    double at(double t) const;

    static PiecewiseControl constant(double value, double total_time, std::size_t segments);
};

struct PropagatorTrajectory {
    std::vector<double> times;
    std::vector<Su2Matrix> unitaries;

    const Su2Matrix& final_unitary() const { return unitaries.back(); }
    // unitary at a requested time (must be one of the stored times)
    const Su2Matrix& at_time(double t) const;
};

// Solves dU/dt = -i (H0 + f(t) V) U, U(0) = I, as an ordered product of exact
// per-segment exponentials. Stores U at every segment boundary and at each
// requested sample time (samples must lie in [0, T]).
PropagatorTrajectory propagate(const PiecewiseControl& ctrl, const Su2Matrix& h0,
                               const Su2Matrix& v, const std::vector<double>& samples = {});

}  // namespace qcl
