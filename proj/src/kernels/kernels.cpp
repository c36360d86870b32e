#include "su11/kernels.hpp"

#include <atomic>

namespace su11::kernels {

namespace {

bool backend_supported(Backend b) {
    switch (b) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend detect_best() {
    if (backend_supported(Backend::avx2)) return Backend::avx2;
    if (backend_supported(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_best()};

} // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

Backend best_available() { return detect_best(); }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
    if (!backend_supported(b)) return false;
    g_backend.store(b, std::memory_order_relaxed);
    return true;
}

void cmatmul(const cd* a, const cd* b, cd* c, std::size_t n) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
        detail::cmatmul_avx2(a, b, c, n);
        return;
#endif
#if defined(__aarch64__)
    case Backend::neon:
        detail::cmatmul_neon(a, b, c, n);
        return;
#endif
    default:
        detail::cmatmul_scalar(a, b, c, n);
        return;
    }
}

cd ctrace_dot(const cd* a, const cd* b, std::size_t n) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
        return detail::ctrace_dot_avx2(a, b, n);
#endif
#if defined(__aarch64__)
    case Backend::neon:
        return detail::ctrace_dot_neon(a, b, n);
#endif
    default:
        return detail::ctrace_dot_scalar(a, b, n);
    }
}

} // namespace su11::kernels
