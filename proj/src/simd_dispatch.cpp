#include <atomic>

#include "qcl/simd_kernels.hpp"

namespace qcl::kern {

#ifdef QCL_HAVE_AVX2_BUILD
const Ops& avx2_ops_impl();
#endif

bool avx2_compiled() {
#ifdef QCL_HAVE_AVX2_BUILD
    return true;
#else
    return false;
#endif
}

bool avx2_supported() {
#ifdef QCL_HAVE_AVX2_BUILD
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& avx2_ops() {
#ifdef QCL_HAVE_AVX2_BUILD
    if (avx2_supported()) return avx2_ops_impl();
#endif
    return scalar_ops();
}

namespace {
std::atomic<bool> g_force_scalar{false};
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const Ops& active() {
    if (g_force_scalar.load(std::memory_order_relaxed)) return scalar_ops();
    return avx2_ops();
}

std::string active_lane_name() { return active().name; }

}  // namespace qcl::kern
