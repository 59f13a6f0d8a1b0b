#include "qcl/su2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcl {

Su2Matrix Su2Matrix::identity() {
    Su2Matrix u;
    u.m = {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};
    return u;
}

Su2Matrix Su2Matrix::zero() { return Su2Matrix{}; }

Su2Matrix Su2Matrix::adjoint() const {
    Su2Matrix a;
    a.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    return a;
}

Su2Matrix Su2Matrix::operator*(const Su2Matrix& o) const {
    Su2Matrix r;
    r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
    r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
    r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
    r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
    return r;
}

Su2Matrix Su2Matrix::operator+(const Su2Matrix& o) const {
    Su2Matrix r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
    return r;
}

Su2Matrix Su2Matrix::operator-(const Su2Matrix& o) const {
    Su2Matrix r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] - o.m[i];
    return r;
}

Su2Matrix Su2Matrix::operator*(cplx a) const {
    Su2Matrix r;
    for (int i = 0; i < 4; ++i) r.m[i] = a * m[i];
    return r;
}

double Su2Matrix::max_abs_diff(const Su2Matrix& o) const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
    return d;
}

double Su2Matrix::max_abs() const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i]));
    return d;
}

bool Su2Matrix::is_hermitian(double tol) const {
    const double scale = std::max(1.0, max_abs());
    return adjoint().max_abs_diff(*this) <= tol * scale;
}

bool Su2Matrix::is_unitary(double tol) const {
    return (adjoint() * *this).max_abs_diff(Su2Matrix::identity()) <= tol;
}

Su2Matrix pauli(PauliAxis axis) {
    Su2Matrix p;
    switch (axis) {
        case PauliAxis::x:
            p.m = {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
            break;
        case PauliAxis::y:
            p.m = {cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)};
            break;
        case PauliAxis::z:
            p.m = {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)};
            break;
    }
    return p;
}

Su2Matrix expm_su2(const Su2Matrix& h, double dt) {
    if (!std::isfinite(dt)) throw std::invalid_argument("expm_su2: dt must be finite");
    if (!h.is_hermitian()) throw std::invalid_argument("expm_su2: matrix is not Hermitian");

    // H = c0*I + cx*sx + cy*sy + cz*sz, all coefficients real for Hermitian H
    const double c0 = 0.5 * (h.m[0].real() + h.m[3].real());
    const double cx = h.m[1].real();
    const double cy = -h.m[1].imag();
    const double cz = 0.5 * (h.m[0].real() - h.m[3].real());
    const double r = std::sqrt(cx * cx + cy * cy + cz * cz);

    const cplx phase = std::exp(cplx(0, -c0 * dt));
    const double ang = r * dt;
    const double c = std::cos(ang);
    // sin(r dt)/r, finite limit dt as r->0
    const double sinc = (std::abs(ang) < 1e-8) ? dt : std::sin(ang) / r;

    Su2Matrix u;
    u.m[0] = phase * cplx(c, -sinc * cz);
    u.m[1] = phase * cplx(-sinc * cy, -sinc * cx);
    u.m[2] = phase * cplx(sinc * cy, -sinc * cx);
    u.m[3] = phase * cplx(c, sinc * cz);
    return u;
}

double PiecewiseControl::at(double t) const {
    const double h = dt();
    auto k = static_cast<std::ptrdiff_t>(std::floor(t / h));
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(values.size()) - 1);
    return values[static_cast<std::size_t>(k)];
}

PiecewiseControl PiecewiseControl::constant(double value, double total_time, std::size_t segments) {
    PiecewiseControl c;
    c.total_time = total_time;
    c.values.assign(segments, value);
    return c;
}

const Su2Matrix& PropagatorTrajectory::at_time(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return unitaries[i];
    }
    throw std::out_of_range("PropagatorTrajectory::at_time: time not stored");
}

PropagatorTrajectory propagate(const PiecewiseControl& ctrl, const Su2Matrix& h0,
                               const Su2Matrix& v, const std::vector<double>& samples) {
    if (ctrl.values.empty()) throw std::invalid_argument("propagate: empty control");
    if (!(ctrl.total_time > 0.0)) throw std::invalid_argument("propagate: T must be positive");
    for (double s : samples) {
        if (s < -1e-12 || s > ctrl.total_time * (1.0 + 1e-12))
            throw std::invalid_argument("propagate: sample time outside [0, T]");
    }

    const std::size_t m = ctrl.segments();
    const double h = ctrl.dt();

    // merge segment boundaries and samples, ascending
    std::vector<double> ts;
    ts.reserve(m + 1 + samples.size());
    for (std::size_t k = 0; k <= m; ++k) ts.push_back(std::min(static_cast<double>(k) * h, ctrl.total_time));
    ts.back() = ctrl.total_time;
    for (double s : samples) ts.push_back(std::clamp(s, 0.0, ctrl.total_time));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             ts.end());

    PropagatorTrajectory traj;
    traj.times = ts;
    traj.unitaries.reserve(ts.size());

    Su2Matrix u = Su2Matrix::identity();
    traj.unitaries.push_back(u);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double t0 = ts[i - 1];
        const double t1 = ts[i];
        // constant Hamiltonian on [t0, t1): the merged grid never straddles a
        // segment boundary, so the control value at the interval start applies
        const double fk = ctrl.at(0.5 * (t0 + t1));
        const Su2Matrix ham = h0 + v * cplx(fk, 0);
        u = expm_su2(ham, t1 - t0) * u;
        traj.unitaries.push_back(u);
    }
    return traj;
}

}  // namespace qcl
