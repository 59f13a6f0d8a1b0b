#pragma once
// Exact spectrum of the operator K at the special control: domain
// classification over the (phi_w, T) rectangle, characteristic functions
// F1/F2, bracketed root finding for the four characteristic equations,
// eigenfunctions from the 2x2 boundary-condition system, and assembled
// spectra with sign counts and magnitude bounds.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcl/objective.hpp"

namespace qcl {

enum class DomainLabel {
    D1,
    D1_phi_half,  // phi_w = pi/2 edge of D1 (closed-form roots)
    D2p,
    D2pp,         // T = -tan(phi_w) curve (lambda = 1 eigenvalue)
    D2ppp,
    D3_low,       // phi_w + T < pi/2
    D3_high,      // phi_w + T > pi/2
    D4,           // phi_w = pi edge (closed-form roots)
    DiagMax,      // phi_w + T = pi: global maximum line
    DiagMin,      // phi_w + T = pi/2 or 3pi/2: global minimum line
    Excluded,     // degenerate closures (T or phi_w within eps of 0)
};

std::string to_string(DomainLabel label);
bool spectrum_defined(DomainLabel label);  // false for DiagMax/DiagMin/Excluded

// Width of the boundary bands mapped onto the boundary labels.
inline constexpr double kBoundaryEps = 1e-9;

// Label per the strict/non-strict domain definitions; boundary bands of width
// kBoundaryEps collapse onto their boundary label. Errors on inputs outside
// (0, pi] x (0, pi/2].
DomainLabel classify(double phi_w, double time);

// Characteristic function of the oscillatory branch (lambda < 1).
double F1(double a, double phi_w, double time);

// Characteristic function of the exponential branch (lambda > 1). For
// 2 a T > 350 returns +-inf (sign of the dominant term) and sets *overflow.
double F2(double a, double phi_w, double time, bool* overflow = nullptr);

// Determinant of the lambda = 1 boundary-condition system:
// -2 sin(phi_w) (sin(phi_w) + T cos(phi_w)).
double delta_lambda1(double phi_w, double time);

enum class EquationTag { eq1, eq2, eq11, eq12, lambda1, closed_form };
std::string to_string(EquationTag tag);

struct RootRecord {
    EquationTag tag = EquationTag::eq1;
    std::size_t index = 0;       // bracket number for eq1/eq2, 0 otherwise
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double a = 0.0;              // root (unused for lambda1)
    double lambda = 0.0;         // 1 - a^2, 1, or 1 + a^2
    double mu_k = 0.0;           // 1 / lambda
    double mu_hess = 0.0;        // v^2 sin(2 phi) mu_k
    int multiplicity = 1;        // 2 when the 2x2 system has rank 0
    double residual = 0.0;       // |F1| or |F2-scaled| at the root
};

// Lemma gates: number of roots of alpha*x = tan(T x) (resp. cot) on (0,1),
// T in (0, pi/2).
int lemma_tan_root_count(double alpha, double time);
int lemma_cot_root_count(double alpha, double time);

// All eq1/eq2 roots up to bracket n_max (one bisection per sign change of the
// pole-free factored residual), or the single eq11/eq12 root when it exists.
// Errors when the equation degenerates (eq2 at phi_w = pi/2, eq1 at phi_w = pi).
std::vector<RootRecord> transcendental_roots(EquationTag eqn, double phi_w, double time,
                                             std::size_t n_max);

// Exact roots on the special lines: D4 (a_n = pi n / T) and D1 with
// phi_w = pi/2 (a_n = (2 pi n - pi) / (2 T)). Errors for other labels.
std::vector<RootRecord> closed_form_roots(DomainLabel label, double time, std::size_t n_max);

// Eigenfunction data for one root: coefficients of the ODE solution basis and
// closed-form handles for g, h, h'' (unit L2-normalized g).
struct Eigenfunction {
    double b = 0.0, c = 0.0;
    EquationTag tag = EquationTag::eq1;
    double a = 0.0;
    double mu_k = 0.0;
    double phi = 0.0;
    double time = 0.0;
    int rank = 1;  // rank of the 2x2 system at the root

    double g(double t) const;       // eigenfunction candidate
    double h(double t) const;       // K g = mu g
    double h_second(double t) const;
};

Eigenfunction eigenfunction_for_root(const RootRecord& rec, double phi_w, double time);

struct AnalyticSpectrum {
    DomainLabel label = DomainLabel::Excluded;
    std::vector<RootRecord> records;      // all roots found, descending |mu_k|
    std::size_t positive_count_k = 0;     // exact finite count of positive mu_K
    bool negative_side_infinite = true;   // mu_K sign of the infinite family
    double factor = 0.0;                  // v^2 sin(2 phi)
    std::size_t n_max = 0;
};

// Merged spectrum (closed-form / transcendental / lambda=1 / F2 roots) with
// exact finite-side counts per the propositions. Errors on DiagMax / DiagMin /
// Excluded labels.
AnalyticSpectrum analytic_spectrum(const SystemConfig& cfg, std::size_t n_max);

// |mu_K| interval induced by the root bracket. Errors when the bracket
// straddles a = 1.
struct MagnitudeBound {
    double lo = 0.0;
    double hi = 0.0;
    bool positive = false;  // sign of mu_K inside the bracket
};
MagnitudeBound eigenvalue_bounds(const RootRecord& rec);

}  // namespace qcl
