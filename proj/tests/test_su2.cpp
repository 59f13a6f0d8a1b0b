#include <doctest.h>

#include <cmath>

#include "qcl/su2.hpp"

using namespace qcl;

namespace {
Su2Matrix scaled(const Su2Matrix& m, double a) { return m * cplx(a, 0); }
}

TEST_CASE("pauli matrices") {
    const auto sx = pauli(PauliAxis::x);
    const auto sy = pauli(PauliAxis::y);
    const auto sz = pauli(PauliAxis::z);

    CHECK(sz(0, 0) == cplx(1, 0));
    CHECK(sz(1, 1) == cplx(-1, 0));
    CHECK(sz(0, 1) == cplx(0, 0));

    // sx^2 = I
    CHECK((sx * sx).max_abs_diff(Su2Matrix::identity()) < 1e-15);
    // [sz, sx] = 2i sy
    const auto comm = sz * sx - sx * sz;
    CHECK(comm.max_abs_diff(sy * cplx(0, 2)) < 1e-15);
}

TEST_CASE("expm_su2 closed forms") {
    const auto sz = pauli(PauliAxis::z);
    const auto sx = pauli(PauliAxis::x);

    // e^{-i pi sz} = -I
    const auto u1 = expm_su2(sz, M_PI);
    CHECK(u1.max_abs_diff(scaled(Su2Matrix::identity(), -1.0)) < 1e-14);

    // H = 0 -> I
    const auto u2 = expm_su2(Su2Matrix::zero(), 1.0);
    CHECK(u2.max_abs_diff(Su2Matrix::identity()) < 1e-15);

    // e^{-i (pi/2) sx} = -i sx
    const auto u3 = expm_su2(sx, M_PI_2);
    CHECK(u3.max_abs_diff(sx * cplx(0, -1)) < 1e-14);

    // non-Hermitian input rejected
    Su2Matrix bad = Su2Matrix::zero();
    bad(0, 1) = cplx(1, 0);
    CHECK_THROWS_AS(expm_su2(bad, 0.5), std::invalid_argument);
}

TEST_CASE("propagate basics") {
    const auto sz = pauli(PauliAxis::z);
    const auto sx = pauli(PauliAxis::x);
    const double T = 1.3;

    // f = 0, constant Hamiltonian: U_T = e^{-i sz T}
    const auto traj = propagate(PiecewiseControl::constant(0.0, T, 7), sz, sx, {0.0, 0.4, T});
    CHECK(traj.at_time(0.0).max_abs_diff(Su2Matrix::identity()) < 1e-15);
    CHECK(traj.final_unitary().max_abs_diff(expm_su2(sz, T)) < 1e-13);

    for (const auto& u : traj.unitaries) CHECK(u.is_unitary(1e-12));

    // |det U_T| = 1
    CHECK(std::abs(std::abs(traj.final_unitary().det()) - 1.0) < 1e-12);

    CHECK_THROWS_AS(propagate(PiecewiseControl{}, sz, sx), std::invalid_argument);
    CHECK_THROWS_AS(propagate(PiecewiseControl::constant(0.0, T, 4), sz, sx, {2 * T}),
                    std::invalid_argument);
}

TEST_CASE("constant control is exactly representable at any segmentation") {
    const auto sz = pauli(PauliAxis::z);
    const auto sx = pauli(PauliAxis::x);
    const double T = 0.9;
    const double c = 0.37;
    const auto u1 = propagate(PiecewiseControl::constant(c, T, 1), sz, sx).final_unitary();
    const auto u64 = propagate(PiecewiseControl::constant(c, T, 64), sz, sx).final_unitary();
    CHECK(u1.max_abs_diff(u64) < 1e-12);
}

TEST_CASE("composition across a segment boundary") {
    const auto sz = pauli(PauliAxis::z);
    const auto sx = pauli(PauliAxis::x);
    PiecewiseControl ctrl;
    ctrl.total_time = 1.0;
    ctrl.values = {0.5, -0.3, 0.8, 0.1};

    const auto traj = propagate(ctrl, sz, sx, {0.5});
    const auto u_half = traj.at_time(0.5);
    const auto u_full = traj.final_unitary();

    // propagate the tail control [0.5, 1] separately
    PiecewiseControl tail;
    tail.total_time = 0.5;
    tail.values = {0.8, 0.1};
    const auto u_tail = propagate(tail, sz, sx).final_unitary();
    CHECK((u_tail * u_half).max_abs_diff(u_full) < 1e-12);
}

TEST_CASE("random controls stay unitary") {
    const auto sz = pauli(PauliAxis::z);
    const auto sx = pauli(PauliAxis::x);
    std::uint64_t state = 99;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 9007199254740992.0 * 4.0 - 2.0;
    };
    for (int rep = 0; rep < 20; ++rep) {
        PiecewiseControl ctrl;
        ctrl.total_time = 0.2 + std::abs(next());
        ctrl.values.resize(16);
        for (auto& v : ctrl.values) v = next();
        const auto traj = propagate(ctrl, sz, sx);
        for (const auto& u : traj.unitaries) CHECK(u.is_unitary(1e-12));
    }
}
