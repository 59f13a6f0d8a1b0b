#include "qcl/simd_kernels.hpp"

namespace qcl::kern {

namespace {

void rotate_pair_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = x[j];
        const double yj = y[j];
        x[j] = c * xj - s * yj;
        y[j] = s * xj + c * yj;
    }
}

void rotate_cols_scalar(double* block, std::size_t stride, std::size_t nrows,
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
            const double ck = c[k], sk = s[k];
            const double x0 = r0[pk], y0 = r0[qk];
            const double x1 = r1[pk], y1 = r1[qk];
            const double x2 = r2[pk], y2 = r2[qk];
            const double x3 = r3[pk], y3 = r3[qk];
            r0[pk] = ck * x0 - sk * y0;
            r0[qk] = sk * x0 + ck * y0;
            r1[pk] = ck * x1 - sk * y1;
            r1[qk] = sk * x1 + ck * y1;
            r2[pk] = ck * x2 - sk * y2;
            r2[qk] = sk * x2 + ck * y2;
            r3[pk] = ck * x3 - sk * y3;
            r3[qk] = sk * x3 + ck * y3;
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

void scaled_rank2_row_scalar(double* out, const double* ca, const double* sa, const double* sw,
                             double alpha, double beta, double row_scale, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        out[j] = row_scale * sw[j] * (alpha * ca[j] + beta * sa[j]);
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    // four independent partial sums, same reduction tree as the AVX2 lane
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        s0 += x[j] * y[j];
        s1 += x[j + 1] * y[j + 1];
        s2 += x[j + 2] * y[j + 2];
        s3 += x[j + 3] * y[j + 3];
    }
    for (; j < n; ++j) s0 += x[j] * y[j];
    return (s0 + s2) + (s1 + s3);
}

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) y[j] += a * x[j];
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{rotate_pair_scalar, rotate_cols_scalar, scaled_rank2_row_scalar,
                         dot_scalar, axpy_scalar, "scalar"};
    return ops;
}

}  // namespace qcl::kern
