#include "qcl/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcl {

namespace {

constexpr double kPi = M_PI;

// Entire (pole-free) residuals with the same zero sets as the characteristic
// equations; F1 = -4 * osc_eq1 * osc_eq2 and F2 = -4 * hyp_eq12 * hyp_eq11
// up to a cosh^2 rescale of the hyperbolic pair.
double osc_eq1(double x, double pw, double T) {
    return x * std::sin(x * T) * std::cos(pw) + std::cos(x * T) * std::sin(pw);
}
double osc_eq2(double x, double pw, double T) {
    return x * std::cos(x * T) * std::sin(pw) + std::sin(x * T) * std::cos(pw);
}
double hyp_eq12(double x, double pw, double T) {  // cosh-scaled
    return x * std::tanh(x * T) * std::cos(pw) - std::sin(pw);
}
double hyp_eq11(double x, double pw, double T) {  // cosh-scaled
    return x * std::sin(pw) + std::tanh(x * T) * std::cos(pw);
}

double f2_scaled(double a, double pw, double T) {
    const double th = std::tanh(2.0 * a * T);
    const double sech = 1.0 / std::cosh(std::min(2.0 * a * T, 350.0));
    return (1.0 - a * a) * th * std::sin(2.0 * pw) + 2.0 * a * (sech - std::cos(2.0 * pw));
}

double bisect_to_limit(double (*f)(double, double, double), double lo, double hi, double pw,
                       double T) {
    double flo = f(lo, pw, T);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at floating-point floor
        const double fm = f(mid, pw, T);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

// all sign-change roots of f on (lo, hi), scanned at nscan points
void scan_roots(double (*f)(double, double, double), double lo, double hi, double pw, double T,
                int nscan, std::vector<double>& out) {
    const double span = hi - lo;
    double xprev = lo + 1e-12 * span;
    double fprev = f(xprev, pw, T);
    for (int i = 1; i <= nscan; ++i) {
        const double x = lo + span * static_cast<double>(i) / nscan;
        const double fx = f(x, pw, T);
        if (fprev == 0.0)
            out.push_back(xprev);
        else if ((fx < 0.0) != (fprev < 0.0))
            out.push_back(bisect_to_limit(f, xprev, x, pw, T));
        xprev = x;
        fprev = fx;
    }
}

struct Mat2 {
    double m00, m01, m10, m11;
    double det() const { return m00 * m11 - m01 * m10; }
    double max_abs() const {
        return std::max(std::max(std::abs(m00), std::abs(m01)),
                        std::max(std::abs(m10), std::abs(m11)));
    }
};

// int_0^T cos(w s + psi) ds and int_0^T sin(w s + psi) ds
double int_cos(double w, double psi, double T) {
    if (std::abs(w) < 1e-12) return T * std::cos(psi);
    return (std::sin(w * T + psi) - std::sin(psi)) / w;
}
double int_sin(double w, double psi, double T) {
    if (std::abs(w) < 1e-12) return T * std::sin(psi);
    return (std::cos(psi) - std::cos(w * T + psi)) / w;
}

// 2x2 boundary-condition system for g = (1-a^2)(b cos 2at + c sin 2at).
Mat2 osc_system(double a, double pw, double T) {
    const double phi = -(pw + T);
    const double sp = std::sin(phi);
    const double lam = 1.0 - a * a;
    const double i1 = 0.5 * (int_cos(2.0 + 2.0 * a, phi, T) + int_cos(2.0 - 2.0 * a, phi, T));
    const double i2 = 0.5 * (int_sin(2.0 + 2.0 * a, phi, T) + int_sin(2.0 * a - 2.0, -phi, T));
    const double i3 = 0.5 * (int_sin(2.0 + 2.0 * a, phi, T) + int_sin(2.0 - 2.0 * a, phi, T));
    const double i4 = 0.5 * (int_cos(2.0 - 2.0 * a, phi, T) - int_cos(2.0 + 2.0 * a, phi, T));
    return Mat2{sp + lam * i1, lam * i2, 2.0 * lam * i3, 2.0 * a * sp + 2.0 * lam * i4};
}

// lambda = 1 system for g = c t + b; det == -Delta/2
Mat2 lin_system(double pw, double T) {
    const double phi = -(pw + T);
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double s2 = std::sin(2.0 * T + phi), c2 = std::cos(2.0 * T + phi);
    const double j1 = 0.5 * (s2 - sp);
    const double j2 = 0.5 * T * s2 + 0.25 * (c2 - cp);
    const double j3 = 0.5 * (cp - c2);
    const double j4 = -0.5 * T * c2 + 0.25 * (s2 - sp);
    return Mat2{sp + j1, j2, 2.0 * j3, sp + 2.0 * j4};
}

// lambda > 1 system in the overflow-safe basis u1 = e^{2a(t-T)}, u2 = e^{-2at}
Mat2 hyp_system(double a, double pw, double T) {
    const double phi = -(pw + T);
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double s2 = std::sin(2.0 * T + phi), c2 = std::cos(2.0 * T + phi);
    const double lam = 1.0 + a * a;
    const double den = 4.0 * a * a + 4.0;
    const double em = std::exp(-2.0 * a * T);
    const double e1p = ((2.0 * a * c2 + 2.0 * s2) - em * (2.0 * a * cp + 2.0 * sp)) / den;
    const double e2p = ((2.0 * a * s2 - 2.0 * c2) - em * (2.0 * a * sp - 2.0 * cp)) / den;
    const double e1m = (em * (-2.0 * a * c2 + 2.0 * s2) - (-2.0 * a * cp + 2.0 * sp)) / den;
    const double e2m = (em * (-2.0 * a * s2 - 2.0 * c2) - (-2.0 * a * sp - 2.0 * cp)) / den;
    return Mat2{em * sp + lam * e1p, sp + lam * e1m, 2.0 * a * em * sp + 2.0 * lam * e2p,
                -2.0 * a * sp + 2.0 * lam * e2m};
}

// null vector of a (numerically) rank-deficient 2x2. ref is the natural entry
// scale of the boundary-condition system (not the matrix max: a rank-0 system
// has all entries at round-off level, far below ref).
int null_vector(const Mat2& m, double ref, double& b, double& c) {
    const double tol = 1e-9 * std::max(ref, 1e-30);
    if (m.max_abs() <= tol) {
        b = 1.0;
        c = 0.0;
        return 0;
    }
    const double r0 = std::abs(m.m00) + std::abs(m.m01);
    const double r1 = std::abs(m.m10) + std::abs(m.m11);
    if (r0 >= r1) {
        b = m.m01;
        c = -m.m00;
    } else {
        b = m.m11;
        c = -m.m10;
    }
    const double nrm = std::hypot(b, c);
    b /= nrm;
    c /= nrm;
    return 1;
}

RootRecord make_osc_record(EquationTag tag, std::size_t index, double lo, double hi, double a,
                           double pw, double T, double vsq_sin2phi) {
    RootRecord r;
    r.tag = tag;
    r.index = index;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.a = a;
    r.lambda = 1.0 - a * a;
    r.mu_k = 1.0 / r.lambda;
    r.mu_hess = vsq_sin2phi * r.mu_k;
    r.residual = std::abs(F1(a, pw, T));
    return r;
}

}  // namespace

std::string to_string(DomainLabel label) {
    switch (label) {
        case DomainLabel::D1: return "D1";
        case DomainLabel::D1_phi_half: return "D1_phi_half";
        case DomainLabel::D2p: return "D2p";
        case DomainLabel::D2pp: return "D2pp";
        case DomainLabel::D2ppp: return "D2ppp";
        case DomainLabel::D3_low: return "D3_low";
        case DomainLabel::D3_high: return "D3_high";
        case DomainLabel::D4: return "D4";
        case DomainLabel::DiagMax: return "DiagMax";
        case DomainLabel::DiagMin: return "DiagMin";
        case DomainLabel::Excluded: return "Excluded";
    }
    return "?";
}

std::string to_string(EquationTag tag) {
    switch (tag) {
        case EquationTag::eq1: return "eq1";
        case EquationTag::eq2: return "eq2";
        case EquationTag::eq11: return "eq11";
        case EquationTag::eq12: return "eq12";
        case EquationTag::lambda1: return "lambda1";
        case EquationTag::closed_form: return "closed_form";
    }
    return "?";
}

bool spectrum_defined(DomainLabel label) {
    return label != DomainLabel::DiagMax && label != DomainLabel::DiagMin &&
           label != DomainLabel::Excluded;
}

DomainLabel classify(double phi_w, double time) {
    if (!(phi_w > 0.0) || phi_w > kPi + kBoundaryEps || !(time > 0.0) ||
        time > 0.5 * kPi + kBoundaryEps)
        throw std::invalid_argument("classify: (phi_w, T) outside (0, pi] x (0, pi/2]");

    if (phi_w <= kBoundaryEps || time <= kBoundaryEps) return DomainLabel::Excluded;

    const double s = phi_w + time;
    if (std::abs(s - kPi) <= kBoundaryEps) return DomainLabel::DiagMax;
    if (std::abs(s - 0.5 * kPi) <= kBoundaryEps || std::abs(s - 1.5 * kPi) <= kBoundaryEps)
        return DomainLabel::DiagMin;

    if (std::abs(phi_w - kPi) <= kBoundaryEps) return DomainLabel::D4;
    if (std::abs(phi_w - 0.5 * kPi) <= kBoundaryEps) return DomainLabel::D1_phi_half;

    if (phi_w > 0.5 * kPi) {
        if (s < kPi) return DomainLabel::D1;
        const double d = time + std::tan(phi_w);  // T - (-tan phi_w)
        if (std::abs(d) <= kBoundaryEps) return DomainLabel::D2pp;
        return d < 0.0 ? DomainLabel::D2p : DomainLabel::D2ppp;
    }
    return s < 0.5 * kPi ? DomainLabel::D3_low : DomainLabel::D3_high;
}

double F1(double a, double phi_w, double time) {
    const double s2a = std::sin(2.0 * a * time);
    const double c2a = std::cos(2.0 * a * time);
    const double s2w = std::sin(2.0 * phi_w);
    const double c2w = std::cos(2.0 * phi_w);
    return -2.0 * a - a * a * s2a * s2w - s2a * s2w + 2.0 * a * c2a * c2w;
}

double F2(double a, double phi_w, double time, bool* overflow) {
    if (overflow) *overflow = false;
    const double s2w = std::sin(2.0 * phi_w);
    const double c2w = std::cos(2.0 * phi_w);
    if (2.0 * a * time > 350.0) {
        if (overflow) *overflow = true;
        // sign of the dominant cosh/sinh terms
        const double lead = (1.0 - a * a) * s2w - 2.0 * a * c2w;
        return lead >= 0.0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    }
    const double sh = std::sinh(2.0 * a * time);
    const double ch = std::cosh(2.0 * a * time);
    return -a * a * sh * s2w + 2.0 * a * (1.0 - ch * c2w) + sh * s2w;
}

double delta_lambda1(double phi_w, double time) {
    return -2.0 * std::sin(phi_w) * (std::sin(phi_w) + time * std::cos(phi_w));
}

int lemma_tan_root_count(double alpha, double time) {
    if (!(time > 0.0) || !(time < 0.5 * kPi))
        throw std::invalid_argument("lemma_tan_root_count: T must lie in (0, pi/2)");
    return (time < alpha && alpha < std::tan(time)) ? 1 : 0;
}

int lemma_cot_root_count(double alpha, double time) {
    if (!(time > 0.0) || !(time < 0.5 * kPi))
        throw std::invalid_argument("lemma_cot_root_count: T must lie in (0, pi/2)");
    return (alpha > 1.0 / std::tan(time)) ? 1 : 0;
}

std::vector<RootRecord> transcendental_roots(EquationTag eqn, double phi_w, double time,
                                             std::size_t n_max) {
    if (!(time > 0.0)) throw std::invalid_argument("transcendental_roots: T must be positive");
    const double phi = -(phi_w + time);
    const double vs = std::sin(2.0 * phi);  // v^2 factor applied by callers with v=1 here
    std::vector<RootRecord> out;

    switch (eqn) {
        case EquationTag::eq1:
        case EquationTag::eq2: {
            const bool is_eq1 = eqn == EquationTag::eq1;
            if (is_eq1 && std::abs(phi_w - kPi) < 1e-9)
                throw std::invalid_argument("transcendental_roots: eq1 degenerates at phi_w = pi");
            if (!is_eq1 && std::abs(phi_w - 0.5 * kPi) < 1e-9)
                throw std::invalid_argument(
                    "transcendental_roots: eq2 degenerates at phi_w = pi/2");
            // Lemma gate for the (0,1) root: on the existence boundary the
            // root degenerates toward a = 0 and a bare sign scan picks up
            // round-off zeros indistinguishable from the lambda = 1 record.
            bool gate01;
            if (is_eq1) {
                gate01 = -1.0 / std::tan(phi_w) > 1.0 / std::tan(std::min(time, 0.5 * kPi - 1e-15));
            } else {
                const double alpha = -std::tan(phi_w);
                const double tan_t =
                    time >= 0.5 * kPi - 1e-12 ? std::numeric_limits<double>::infinity()
                                              : std::tan(time);
                gate01 = time < alpha && alpha < tan_t;
            }
            auto f = is_eq1 ? &osc_eq1 : &osc_eq2;
            for (std::size_t n = 1; n <= n_max; ++n) {
                const double lo = static_cast<double>(n - 1) * kPi / time;
                const double hi = static_cast<double>(n) * kPi / time;
                std::vector<double> roots;
                scan_roots(f, lo, hi, phi_w, time, 128, roots);
                for (double a : roots) {
                    if (n == 1 && a < 1.0 && !gate01) continue;
                    out.push_back(make_osc_record(eqn, n, lo, hi, a, phi_w, time, vs));
                }
            }
            return out;
        }
        case EquationTag::eq11:
        case EquationTag::eq12: {
            auto f = (eqn == EquationTag::eq11) ? &hyp_eq11 : &hyp_eq12;
            double lo = 1e-8, hi = 1.0;
            std::vector<double> roots;
            while (hi <= 1e8) {
                scan_roots(f, lo, hi, phi_w, time, 64, roots);
                if (!roots.empty()) break;
                lo = hi;
                hi *= 4.0;
            }
            if (roots.size() > 1)
                throw std::runtime_error("transcendental_roots: multiple hyperbolic roots");
            for (double a : roots) {
                RootRecord r;
                r.tag = eqn;
                r.index = 0;
                r.bracket_lo = 0.0;
                r.bracket_hi = std::numeric_limits<double>::infinity();
                r.a = a;
                r.lambda = 1.0 + a * a;
                r.mu_k = 1.0 / r.lambda;
                r.mu_hess = vs * r.mu_k;
                r.residual = std::abs(f2_scaled(a, phi_w, time));
                out.push_back(r);
            }
            return out;
        }
        default:
            throw std::invalid_argument("transcendental_roots: tag has no bracketed equation");
    }
}

std::vector<RootRecord> closed_form_roots(DomainLabel label, double time, std::size_t n_max) {
    if (label != DomainLabel::D4 && label != DomainLabel::D1_phi_half)
        throw std::invalid_argument("closed_form_roots: label has no closed form");
    const double pw = (label == DomainLabel::D4) ? kPi : 0.5 * kPi;
    const double phi = -(pw + time);
    const double vs = std::sin(2.0 * phi);
    std::vector<RootRecord> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double a = (label == DomainLabel::D4)
                             ? static_cast<double>(n) * kPi / time
                             : (2.0 * static_cast<double>(n) - 1.0) * kPi / (2.0 * time);
        RootRecord r;
        r.tag = EquationTag::closed_form;
        r.index = n;
        r.bracket_lo = static_cast<double>(n - 1) * kPi / time;
        r.bracket_hi = static_cast<double>(n) * kPi / time;
        r.a = a;
        r.lambda = 1.0 - a * a;
        r.mu_k = 1.0 / r.lambda;
        r.mu_hess = vs * r.mu_k;
        r.multiplicity = 2;  // both basis solutions satisfy the boundary system
        r.residual = std::abs(F1(a, pw, time));
        out.push_back(r);
    }
    return out;
}

double Eigenfunction::g(double t) const {
    switch (tag) {
        case EquationTag::lambda1:
            return b + c * t;
        case EquationTag::eq11:
        case EquationTag::eq12:
            return b * std::exp(2.0 * a * (t - time)) + c * std::exp(-2.0 * a * t);
        default:
            return b * std::cos(2.0 * a * t) + c * std::sin(2.0 * a * t);
    }
}

double Eigenfunction::h(double t) const { return mu_k * g(t); }

double Eigenfunction::h_second(double t) const {
    switch (tag) {
        case EquationTag::lambda1:
            return 0.0;
        case EquationTag::eq11:
        case EquationTag::eq12:
            return mu_k * 4.0 * a * a * g(t);
        default:
            return -mu_k * 4.0 * a * a * g(t);
    }
}

Eigenfunction eigenfunction_for_root(const RootRecord& rec, double phi_w, double time) {
    Eigenfunction ef;
    ef.tag = rec.tag;
    ef.a = rec.a;
    ef.mu_k = rec.mu_k;
    ef.phi = -(phi_w + time);
    ef.time = time;

    const double ref = std::abs(std::sin(ef.phi)) + time + 1.0;
    Mat2 m{};
    switch (rec.tag) {
        case EquationTag::lambda1:
            m = lin_system(phi_w, time);
            break;
        case EquationTag::eq11:
        case EquationTag::eq12:
            m = hyp_system(rec.a, phi_w, time);
            break;
        default:
            m = osc_system(rec.a, phi_w, time);
            break;
    }
    // at a true root the system is rank-deficient; a full-rank system means
    // the record does not belong to the spectrum
    if (std::abs(m.det()) > 1e-6 * std::max(m.max_abs() * m.max_abs(), 1e-20))
        throw std::invalid_argument("eigenfunction_for_root: system has full rank (not a root)");
    ef.rank = null_vector(m, ref, ef.b, ef.c);

    // unit L2 norm of g on [0, T]
    double nrm2 = 0.0;
    const double b = ef.b, c = ef.c, aa = ef.a, T = time;
    switch (rec.tag) {
        case EquationTag::lambda1:
            nrm2 = b * b * T + b * c * T * T + c * c * T * T * T / 3.0;
            break;
        case EquationTag::eq11:
        case EquationTag::eq12: {
            const double e4 = (1.0 - std::exp(-4.0 * aa * T)) / (4.0 * aa);
            nrm2 = (b * b + c * c) * e4 + 2.0 * b * c * T * std::exp(-2.0 * aa * T);
            break;
        }
        default: {
            const double s4 = std::sin(4.0 * aa * T) / (8.0 * aa);
            const double c4 = (1.0 - std::cos(4.0 * aa * T)) / (4.0 * aa);
            nrm2 = b * b * (0.5 * T + s4) + c * c * (0.5 * T - s4) + b * c * c4;
            break;
        }
    }
    const double nrm = std::sqrt(std::max(nrm2, 1e-300));
    ef.b /= nrm;
    ef.c /= nrm;
    return ef;
}

AnalyticSpectrum analytic_spectrum(const SystemConfig& cfg, std::size_t n_max) {
    const DomainLabel label = classify(cfg.phi_w, cfg.time);
    if (!spectrum_defined(label))
        throw std::invalid_argument("analytic_spectrum: spectrum undefined at " +
                                    to_string(label));

    AnalyticSpectrum sp;
    sp.label = label;
    sp.n_max = n_max;
    const double vsq = cfg.v() * cfg.v();
    sp.factor = vsq * std::sin(2.0 * cfg.phi());

    auto add = [&](std::vector<RootRecord>&& recs) {
        for (auto& r : recs) {
            r.mu_hess = sp.factor * r.mu_k;
            sp.records.push_back(r);
        }
    };

    switch (label) {
        case DomainLabel::D4:
        case DomainLabel::D1_phi_half: {
            add(closed_form_roots(label, cfg.time, n_max));
            if (label == DomainLabel::D4) {
                RootRecord r;
                r.tag = EquationTag::lambda1;
                r.lambda = 1.0;
                r.mu_k = 1.0;
                r.mu_hess = sp.factor;
                const Mat2 m = lin_system(cfg.phi_w, cfg.time);
                double b, c;
                r.multiplicity = (null_vector(m, 1.0 + cfg.time, b, c) == 0) ? 2 : 1;
                r.residual = std::abs(m.det());
                sp.records.push_back(r);
            }
            break;
        }
        case DomainLabel::D2pp: {
            add(transcendental_roots(EquationTag::eq1, cfg.phi_w, cfg.time, n_max));
            add(transcendental_roots(EquationTag::eq2, cfg.phi_w, cfg.time, n_max));
            RootRecord r;
            r.tag = EquationTag::lambda1;
            r.lambda = 1.0;
            r.mu_k = 1.0;
            r.mu_hess = sp.factor;
            const Mat2 m = lin_system(cfg.phi_w, cfg.time);
            double b, c;
            r.multiplicity = (null_vector(m, 1.0 + cfg.time, b, c) == 0) ? 2 : 1;
            r.residual = std::abs(m.det());
            sp.records.push_back(r);
            break;
        }
        default: {
            add(transcendental_roots(EquationTag::eq1, cfg.phi_w, cfg.time, n_max));
            add(transcendental_roots(EquationTag::eq2, cfg.phi_w, cfg.time, n_max));
            add(transcendental_roots(EquationTag::eq11, cfg.phi_w, cfg.time, n_max));
            add(transcendental_roots(EquationTag::eq12, cfg.phi_w, cfg.time, n_max));
            break;
        }
    }

    std::stable_sort(sp.records.begin(), sp.records.end(),
                     [](const RootRecord& x, const RootRecord& y) {
                         return std::abs(x.mu_k) > std::abs(y.mu_k);
                     });

    std::size_t pos = 0;
    for (const auto& r : sp.records)
        if (r.mu_k > 0.0) pos += static_cast<std::size_t>(r.multiplicity);
    sp.positive_count_k = pos;
    sp.negative_side_infinite = true;

    // proposition cross-check: D1 family 0, D3 family 1, D2/D4 per case
    std::size_t expected = 0;
    switch (label) {
        case DomainLabel::D1:
        case DomainLabel::D1_phi_half: expected = 0; break;
        case DomainLabel::D2p:
        case DomainLabel::D2pp:
        case DomainLabel::D2ppp: expected = 2; break;
        case DomainLabel::D3_low:
        case DomainLabel::D3_high: expected = 1; break;
        case DomainLabel::D4: expected = 1; break;
        default: break;
    }
    if (pos != expected)
        throw std::runtime_error("analytic_spectrum: positive count " + std::to_string(pos) +
                                 " disagrees with the propositions (" + std::to_string(expected) +
                                 ") at " + to_string(label));
    return sp;
}

MagnitudeBound eigenvalue_bounds(const RootRecord& rec) {
    MagnitudeBound b;
    switch (rec.tag) {
        case EquationTag::lambda1:
            b.lo = b.hi = 1.0;
            b.positive = true;
            return b;
        case EquationTag::eq11:
        case EquationTag::eq12:
            b.lo = 0.0;
            b.hi = 1.0;
            b.positive = true;
            return b;
        case EquationTag::closed_form:
            b.lo = b.hi = std::abs(rec.mu_k);
            b.positive = rec.mu_k > 0.0;
            return b;
        default: {
            if (std::abs(rec.a - 1.0) < 1e-9)
                throw std::invalid_argument("eigenvalue_bounds: root at the lambda = 0 boundary");
            if (rec.a < 1.0) {
                // oscillatory root below 1: mu > 1
                b.lo = 1.0;
                b.hi = std::numeric_limits<double>::infinity();
                b.positive = true;
                return b;
            }
            const double lo_eff = std::max(rec.bracket_lo, 1.0);
            const double hi_eff = rec.bracket_hi;
            b.lo = 1.0 / (hi_eff * hi_eff - 1.0);
            b.hi = (lo_eff > 1.0) ? 1.0 / (lo_eff * lo_eff - 1.0)
                                  : std::numeric_limits<double>::infinity();
            b.positive = false;
            return b;
        }
    }
}

}  // namespace qcl
