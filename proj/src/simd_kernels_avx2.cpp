// AVX2+FMA kernel lane. This translation unit is compiled with -mavx2 -mfma;
// nothing here runs unless the dispatcher saw the CPUID bits.

#include <immintrin.h>

#include "qcl/simd_kernels.hpp"

namespace qcl::kern {

namespace {

void rotate_pair_avx2(double* x, double* y, std::size_t n, double c, double s) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d xj = _mm256_loadu_pd(x + j);
        const __m256d yj = _mm256_loadu_pd(y + j);
        _mm256_storeu_pd(x + j, _mm256_fmsub_pd(vc, xj, _mm256_mul_pd(vs, yj)));
        _mm256_storeu_pd(y + j, _mm256_fmadd_pd(vs, xj, _mm256_mul_pd(vc, yj)));
    }
    for (; j < n; ++j) {
        const double xj = x[j];
        const double yj = y[j];
        x[j] = c * xj - s * yj;
        y[j] = s * xj + c * yj;
    }
}

void rotate_cols_avx2(double* block, std::size_t stride, std::size_t nrows,
                      const std::uint32_t* p, const std::uint32_t* q, const double* c,
                      const double* s, std::size_t m) {
    std::size_t i = 0;
    for (; i + 4 <= nrows; i += 4) {
        double* r0 = block + i * stride;
        double* r1 = r0 + stride;
        double* r2 = r1 + stride;
        double* r3 = r2 + stride;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t pk = p[k], qk = q[k];
            const __m256d vc = _mm256_set1_pd(c[k]);
            const __m256d vs = _mm256_set1_pd(s[k]);
            const __m256d x = _mm256_set_pd(r3[pk], r2[pk], r1[pk], r0[pk]);
            const __m256d y = _mm256_set_pd(r3[qk], r2[qk], r1[qk], r0[qk]);
            const __m256d xn = _mm256_fmsub_pd(vc, x, _mm256_mul_pd(vs, y));
            const __m256d yn = _mm256_fmadd_pd(vs, x, _mm256_mul_pd(vc, y));
            alignas(32) double xs[4], ys[4];
            _mm256_store_pd(xs, xn);
            _mm256_store_pd(ys, yn);
            r0[pk] = xs[0]; r1[pk] = xs[1]; r2[pk] = xs[2]; r3[pk] = xs[3];
            r0[qk] = ys[0]; r1[qk] = ys[1]; r2[qk] = ys[2]; r3[qk] = ys[3];
        }
    }
    for (; i < nrows; ++i) {
        double* row = block + i * stride;
        for (std::size_t k = 0; k < m; ++k) {
            const double x = row[p[k]], y = row[q[k]];
            row[p[k]] = c[k] * x - s[k] * y;
            row[q[k]] = s[k] * x + c[k] * y;
        }
    }
}

void scaled_rank2_row_avx2(double* out, const double* ca, const double* sa, const double* sw,
                           double alpha, double beta, double row_scale, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    const __m256d vr = _mm256_set1_pd(row_scale);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d c = _mm256_loadu_pd(ca + j);
        const __m256d s = _mm256_loadu_pd(sa + j);
        const __m256d w = _mm256_loadu_pd(sw + j);
        const __m256d lin = _mm256_fmadd_pd(va, c, _mm256_mul_pd(vb, s));
        _mm256_storeu_pd(out + j, _mm256_mul_pd(_mm256_mul_pd(vr, w), lin));
    }
    for (; j < n; ++j) out[j] = row_scale * sw[j] * (alpha * ca[j] + beta * sa[j]);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j), acc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s0 = lanes[0], s1 = lanes[1], s2 = lanes[2], s3 = lanes[3];
    for (; j < n; ++j) s0 += x[j] * y[j];
    return (s0 + s2) + (s1 + s3);
}

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d yj = _mm256_loadu_pd(y + j);
        _mm256_storeu_pd(y + j, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + j), yj));
    }
    for (; j < n; ++j) y[j] += a * x[j];
}

}  // namespace

const Ops& avx2_ops_impl() {
    static const Ops ops{rotate_pair_avx2, rotate_cols_avx2, scaled_rank2_row_avx2, dot_avx2,
                         axpy_avx2, "avx2"};
    return ops;
}

}  // namespace qcl::kern
