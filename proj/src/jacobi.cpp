#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qcl/simd_kernels.hpp"
#include "qcl/spectral.hpp"

namespace qcl {

namespace {

double off_diag_frobenius(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

double frobenius(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

// One parallel-ordering sweep = n-1 tournament rounds covering every index
// pair once. Rotations within a round touch disjoint index pairs, so the round
// applies exactly as G^T A G with G the product of its rotations: first the
// row half (contiguous row updates), then the column half (independent
// column-pair rotations streamed row-wise). Skipped pairs wait for a later
// sweep; the skip threshold tracks the off-diagonal norm down to the target.
struct RoundPlan {
    std::vector<std::size_t> p, q;
};

std::vector<RoundPlan> tournament_rounds(std::size_t n) {
    const std::size_t np = n + (n % 2);  // pad odd n with a bye
    const std::size_t rounds = np - 1;
    std::vector<RoundPlan> plan(rounds);
    std::vector<std::size_t> pos(np);
    std::iota(pos.begin(), pos.end(), 0);
    for (std::size_t r = 0; r < rounds; ++r) {
        auto& rp = plan[r];
        for (std::size_t i = 0; i < np / 2; ++i) {
            std::size_t a = pos[i], b = pos[np - 1 - i];
            if (a >= n || b >= n) continue;  // bye
            if (a > b) std::swap(a, b);
            rp.p.push_back(a);
            rp.q.push_back(b);
        }
        // rotate all but the first position
        std::rotate(pos.begin() + 1, pos.end() - 1, pos.end());
    }
    return plan;
}

struct RawJacobiResult {
    std::vector<double> values;   // unsorted (diagonal order)
    std::vector<double> vectors;  // row k = eigenvector k (if requested)
    std::size_t sweeps = 0;
    double off_norm = 0.0;
    bool converged = false;
};

RawJacobiResult jacobi_core(std::vector<double>& a, std::size_t n, bool want_vectors,
                            std::size_t max_sweeps, double off_norm_factor) {
    RawJacobiResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    if (n == 1) {
        res.values = {a[0]};
        if (want_vectors) res.vectors = {1.0};
        res.converged = true;
        return res;
    }

    const double target = off_norm_factor * frobenius(a);
    // floor: total mass of permanently skipped pairs stays under the target
    const double skip_floor = target / (static_cast<double>(n) * 2.0);

    std::vector<double> vecs;
    if (want_vectors) {
        vecs.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) vecs[i * n + i] = 1.0;
    }

    const auto plan = tournament_rounds(n);
    const auto& ops = kern::active();

    std::vector<double> cs, sn;
    std::vector<std::uint32_t> rp, rq;

    res.off_norm = off_diag_frobenius(a, n);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        if (res.off_norm <= target) {
            res.converged = true;
            break;
        }
        const double skip_tol =
            std::max(skip_floor, res.off_norm / (4.0 * static_cast<double>(n)));
        for (const auto& round : plan) {
            cs.clear(); sn.clear(); rp.clear(); rq.clear();
            for (std::size_t k = 0; k < round.p.size(); ++k) {
                const std::size_t p = round.p[k], q = round.q[k];
                const double apq = a[p * n + q];
                if (std::abs(apq) <= skip_tol) continue;
                const double app = a[p * n + p], aqq = a[q * n + q];
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                cs.push_back(c);
                sn.push_back(t * c);
                rp.push_back(static_cast<std::uint32_t>(p));
                rq.push_back(static_cast<std::uint32_t>(q));
            }
            if (rp.empty()) continue;

            for (std::size_t k = 0; k < rp.size(); ++k)
                ops.rotate_pair(&a[rp[k] * n], &a[rq[k] * n], n, cs[k], sn[k]);
            ops.rotate_cols(a.data(), n, n, rp.data(), rq.data(), cs.data(), sn.data(), rp.size());
            if (want_vectors)
                for (std::size_t k = 0; k < rp.size(); ++k)
                    ops.rotate_pair(&vecs[rp[k] * n], &vecs[rq[k] * n], n, cs[k], sn[k]);
        }
        res.sweeps = sweep + 1;
        res.off_norm = off_diag_frobenius(a, n);
    }
    if (!res.converged) res.converged = res.off_norm <= target;

    res.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.values[i] = a[i * n + i];
    res.vectors = std::move(vecs);
    return res;
}

bool reflection_symmetric(const std::vector<double>& a, std::size_t n) {
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    const double tol = 1e-13 * std::max(scale, 1e-300);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(a[i * n + j] - a[(n - 1 - i) * n + (n - 1 - j)]) > tol) return false;
    return true;
}

struct LabeledEigen {
    double value;
    std::vector<double> vector;
};

void sort_descending(EigenDecomposition& d, bool with_vectors) {
    const std::size_t n = d.values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return d.values[i] > d.values[j]; });
    std::vector<double> vals(n);
    std::vector<double> vecs;
    if (with_vectors) vecs.resize(d.vectors.size());
    const std::size_t dim = d.n;
    for (std::size_t k = 0; k < n; ++k) {
        vals[k] = d.values[idx[k]];
        if (with_vectors)
            std::copy_n(d.vectors.begin() + static_cast<std::ptrdiff_t>(idx[k] * dim), dim,
                        vecs.begin() + static_cast<std::ptrdiff_t>(k * dim));
    }
    d.values = std::move(vals);
    if (with_vectors) d.vectors = std::move(vecs);
}

}  // namespace

EigenDecomposition jacobi_eigen(std::vector<double> a, std::size_t n,
                                const EigenSolveOptions& opts) {
    if (a.size() != n * n) throw std::invalid_argument("jacobi_eigen: bad matrix size");
    const double sym_tol = 1e-12 * std::max(1.0, frobenius(a));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a[i * n + j] - a[j * n + i]) > sym_tol)
                throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");

    EigenDecomposition out;
    out.n = n;

    if (opts.allow_reflection_split && n >= 8 && reflection_symmetric(a, n)) {
        // exact block split over the even/odd reflection subspaces
        const std::size_t m = n / 2;
        const bool odd = (n % 2) != 0;
        const std::size_t ne = m + (odd ? 1 : 0);
        const double rt2 = std::sqrt(2.0);

        std::vector<double> ae(ne * ne), ao(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double x = a[i * n + j];
                const double y = a[i * n + (n - 1 - j)];
                ae[i * ne + j] = x + y;
                ao[i * m + j] = x - y;
            }
        if (odd) {
            const std::size_t mid = m;
            for (std::size_t i = 0; i < m; ++i) {
                ae[i * ne + m] = rt2 * a[i * n + mid];
                ae[m * ne + i] = ae[i * ne + m];
            }
            ae[m * ne + m] = a[mid * n + mid];
        }

        auto re = jacobi_core(ae, ne, opts.want_vectors, opts.max_sweeps, opts.off_norm_factor);
        auto ro = jacobi_core(ao, m, opts.want_vectors, opts.max_sweeps, opts.off_norm_factor);
        if (!re.converged || !ro.converged)
            throw std::runtime_error("sym_eigen: Jacobi did not converge within the sweep cap");

        out.used_reflection_split = true;
        out.sweeps = std::max(re.sweeps, ro.sweeps);
        out.off_norm = std::hypot(re.off_norm, ro.off_norm);
        out.values.reserve(n);
        out.values.insert(out.values.end(), re.values.begin(), re.values.end());
        out.values.insert(out.values.end(), ro.values.begin(), ro.values.end());
        if (opts.want_vectors) {
            out.vectors.assign(n * n, 0.0);
            for (std::size_t k = 0; k < ne; ++k) {
                double* dst = &out.vectors[k * n];
                const double* src = &re.vectors[k * ne];
                for (std::size_t i = 0; i < m; ++i) {
                    dst[i] = src[i] / rt2;
                    dst[n - 1 - i] = src[i] / rt2;
                }
                if (odd) dst[m] = src[m];
            }
            for (std::size_t k = 0; k < m; ++k) {
                double* dst = &out.vectors[(ne + k) * n];
                const double* src = &ro.vectors[k * m];
                for (std::size_t i = 0; i < m; ++i) {
                    dst[i] = src[i] / rt2;
                    dst[n - 1 - i] = -src[i] / rt2;
                }
            }
        }
        sort_descending(out, opts.want_vectors);
        return out;
    }

    auto r = jacobi_core(a, n, opts.want_vectors, opts.max_sweeps, opts.off_norm_factor);
    if (!r.converged)
        throw std::runtime_error("sym_eigen: Jacobi did not converge within the sweep cap");
    out.values = std::move(r.values);
    out.vectors = std::move(r.vectors);
    out.sweeps = r.sweeps;
    out.off_norm = r.off_norm;
    sort_descending(out, opts.want_vectors);
    return out;
}

EigenDecomposition sym_eigen_full(const DiscretizedOperator& op, const EigenSolveOptions& opts) {
    return jacobi_eigen(op.matrix, op.n, opts);
}

std::vector<double> sym_eigen(const DiscretizedOperator& op) {
    EigenSolveOptions opts;
    return jacobi_eigen(op.matrix, op.n, opts).values;
}

}  // namespace qcl
