#pragma once
// Data-parallel inner loops behind the spectral code: scalar reference
// implementations plus AVX2 variants selected once at runtime. The two lanes
// are equivalence-tested against each other; everything above this layer is
// lane-agnostic.

#include <cstddef>
#include <cstdint>
#include <string>

namespace qcl::kern {

struct Ops {
    // Givens rotation applied to two rows: x <- c*x - s*y, y <- s*x + c*y.
    void (*rotate_pair)(double* x, double* y, std::size_t n, double c, double s);
    // m independent column-pair rotations applied to nrows consecutive rows of
    // a row-major block (the column half of a disjoint Jacobi round)
    void (*rotate_cols)(double* block, std::size_t stride, std::size_t nrows,
                        const std::uint32_t* p, const std::uint32_t* q, const double* c,
                        const double* s, std::size_t m);
    // out[j] = row_scale * sw[j] * (alpha*ca[j] + beta*sa[j])
    void (*scaled_rank2_row)(double* out, const double* ca, const double* sa, const double* sw,
                             double alpha, double beta, double row_scale, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y += a*x
    void (*axpy)(double* y, const double* x, double a, std::size_t n);
    const char* name;
};

const Ops& scalar_ops();
const Ops& avx2_ops();      // falls back to scalar when AVX2 is unavailable
bool avx2_compiled();
bool avx2_supported();      // compiled in and reported by the CPU

// Dispatched lane (AVX2 when supported, else scalar). force_scalar overrides
// for tests; affects subsequent active() calls.
const Ops& active();
void force_scalar(bool on);
std::string active_lane_name();

}  // namespace qcl::kern
