#include "su11/kernels.hpp"

#include <algorithm>

// Reference kernels.  These define the arithmetic order that the SIMD
// variants reproduce exactly:
//   per product term  c += a*b  (a broadcast, b streamed):
//     cr += ar*br;  ci += ar*bi;   (one mul + one add each)
//     cr -= ai*bi;  ci += ai*br;   (mul then add/sub)
// which matches mul/add/addsub vector sequences lane for lane.

namespace su11::kernels::detail {

void cmatmul_scalar(const cd* a, const cd* b, cd* c, std::size_t n) {
    std::fill(c, c + n * n, cd{});
    for (std::size_t i = 0; i < n; ++i) {
        cd* crow = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = a[i * n + k].real();
            const double ai = a[i * n + k].imag();
            const cd* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real();
                const double bi = brow[j].imag();
                double cr = crow[j].real();
                double ci = crow[j].imag();
                cr = cr + ar * br;
                ci = ci + ar * bi;
                cr = cr - ai * bi;
                ci = ci + ai * br;
                crow[j] = cd{cr, ci};
            }
        }
    }
}

cd ctrace_dot_scalar(const cd* a, const cd* b, std::size_t n) {
    double tr = 0.0;
    double ti = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // two interleaved accumulators over k, mirroring the 2-complex-wide
        // vector lanes of the SIMD variants
        double s0r = 0.0, s0i = 0.0, s1r = 0.0, s1i = 0.0;
        std::size_t k = 0;
        for (; k + 2 <= n; k += 2) {
            {
                const double ar = a[i * n + k].real(), ai = a[i * n + k].imag();
                const double br = b[k * n + i].real(), bi = b[k * n + i].imag();
                s0r = s0r + ar * br;
                s0i = s0i + ar * bi;
                s0r = s0r - ai * bi;
                s0i = s0i + ai * br;
            }
            {
                const double ar = a[i * n + k + 1].real(), ai = a[i * n + k + 1].imag();
                const double br = b[(k + 1) * n + i].real(), bi = b[(k + 1) * n + i].imag();
                s1r = s1r + ar * br;
                s1i = s1i + ar * bi;
                s1r = s1r - ai * bi;
                s1i = s1i + ai * br;
            }
        }
        if (k < n) {
            const double ar = a[i * n + k].real(), ai = a[i * n + k].imag();
            const double br = b[k * n + i].real(), bi = b[k * n + i].imag();
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
