#include "su11/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>

// NEON kernels, 1 complex double per 128-bit vector, two vectors per step to
// mirror the 2-wide AVX2 lanes.  The add/sub of the imaginary cross term is
// realised as an exact sign flip on the real lane followed by an add, which
// rounds identically to the scalar sub/add pair.

namespace su11::kernels::detail {

namespace {

inline float64x2_t cmul_acc(float64x2_t acc, double ar, double ai, float64x2_t bv) {
    const float64x2_t bs = vextq_f64(bv, bv, 1); // (bi, br)
    acc = vaddq_f64(acc, vmulq_n_f64(bv, ar));
    // (-ai*bi, +ai*br)
    float64x2_t t = vmulq_n_f64(bs, ai);
    t = vsetq_lane_f64(-vgetq_lane_f64(t, 0), t, 0);
    return vaddq_f64(acc, t);
}

} // namespace

void cmatmul_neon(const cd* a, const cd* b, cd* c, std::size_t n) {
    std::fill(c, c + n * n, cd{});
    double* c_ptr = reinterpret_cast<double*>(c);
    const double* b_ptr = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = c_ptr + 2 * i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = a[i * n + k].real();
            const double ai = a[i * n + k].imag();
            const double* brow = b_ptr + 2 * k * n;
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                float64x2_t c0 = vld1q_f64(crow + 2 * j);
                float64x2_t c1 = vld1q_f64(crow + 2 * j + 2);
                c0 = cmul_acc(c0, ar, ai, vld1q_f64(brow + 2 * j));
                c1 = cmul_acc(c1, ar, ai, vld1q_f64(brow + 2 * j + 2));
                vst1q_f64(crow + 2 * j, c0);
                vst1q_f64(crow + 2 * j + 2, c1);
            }
            if (j < n) {
                float64x2_t c0 = vld1q_f64(crow + 2 * j);
                c0 = cmul_acc(c0, ar, ai, vld1q_f64(brow + 2 * j));
                vst1q_f64(crow + 2 * j, c0);
            }
        }
    }
}

cd ctrace_dot_neon(const cd* a, const cd* b, std::size_t n) {
    const double* b_ptr = reinterpret_cast<const double*>(b);
    double tr = 0.0;
    double ti = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t acc0 = vdupq_n_f64(0.0);
        float64x2_t acc1 = vdupq_n_f64(0.0);
        std::size_t k = 0;
        for (; k + 2 <= n; k += 2) {
            acc0 = cmul_acc(acc0, a[i * n + k].real(), a[i * n + k].imag(),
                            vld1q_f64(b_ptr + 2 * (k * n + i)));
            acc1 = cmul_acc(acc1, a[i * n + k + 1].real(), a[i * n + k + 1].imag(),
                            vld1q_f64(b_ptr + 2 * ((k + 1) * n + i)));
        }
        double s0r = vgetq_lane_f64(acc0, 0);
        double s0i = vgetq_lane_f64(acc0, 1);
        const double s1r = vgetq_lane_f64(acc1, 0);
        const double s1i = vgetq_lane_f64(acc1, 1);
        if (k < n) {
            const double ar = a[i * n + k].real(), ai = a[i * n + k].imag();
            const double br = b[k * n + i].real();
            const double bi = b[k * n + i].imag();
            s0r = s0r + ar * br;
            s0i = s0i + ar * bi;
            s0r = s0r - ai * bi;
            s0i = s0i + ai * br;
        }
        tr += s0r + s1r;
        ti += s0i + s1i;
    }
    return cd{tr, ti};
}

} // namespace su11::kernels::detail

#endif // __aarch64__
