#include "su11/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

// AVX2 kernels, 2 complex doubles per 256-bit vector.  Operation order per
// output element matches the scalar reference exactly (mul, add, mul, addsub;
// no FMA), so results are bit-identical.

namespace su11::kernels::detail {

namespace {

// acc <- acc + (ar,ai) * bv  with bv = (b0r,b0i,b1r,b1i) interleaved
inline __m256d cmul_acc(__m256d acc, __m256d are, __m256d aim, __m256d bv) {
    const __m256d bs = _mm256_permute_pd(bv, 0x5); // (b0i,b0r,b1i,b1r)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(are, bv));
    acc = _mm256_addsub_pd(acc, _mm256_mul_pd(aim, bs));
    return acc;
}

} // namespace

void cmatmul_avx2(const cd* a, const cd* b, cd* c, std::size_t n) {
    std::fill(c, c + n * n, cd{});
    double* cd_ptr = reinterpret_cast<double*>(c);
    const double* b_ptr = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = cd_ptr + 2 * i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = a[i * n + k].real();
            const double ai = a[i * n + k].imag();
            const __m256d are = _mm256_set1_pd(ar);
            const __m256d aim = _mm256_set1_pd(ai);
            const double* brow = b_ptr + 2 * k * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d c0 = _mm256_loadu_pd(crow + 2 * j);
                __m256d c1 = _mm256_loadu_pd(crow + 2 * j + 4);
                c0 = cmul_acc(c0, are, aim, _mm256_loadu_pd(brow + 2 * j));
                c1 = cmul_acc(c1, are, aim, _mm256_loadu_pd(brow + 2 * j + 4));
                _mm256_storeu_pd(crow + 2 * j, c0);
                _mm256_storeu_pd(crow + 2 * j + 4, c1);
            }
            for (; j + 2 <= n; j += 2) {
                __m256d c0 = _mm256_loadu_pd(crow + 2 * j);
                c0 = cmul_acc(c0, are, aim, _mm256_loadu_pd(brow + 2 * j));
                _mm256_storeu_pd(crow + 2 * j, c0);
            }
            if (j < n) {
                const double br = brow[2 * j], bi = brow[2 * j + 1];
                double cr = crow[2 * j], ci = crow[2 * j + 1];
                cr = cr + ar * br;
                ci = ci + ar * bi;
                cr = cr - ai * bi;
                ci = ci + ai * br;
                crow[2 * j] = cr;
                crow[2 * j + 1] = ci;
            }
        }
    }
}

cd ctrace_dot_avx2(const cd* a, const cd* b, std::size_t n) {
    const double* a_ptr = reinterpret_cast<const double*>(a);
    const double* b_ptr = reinterpret_cast<const double*>(b);
    double tr = 0.0;
    double ti = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // lanes (s0, s1): the two interleaved accumulators of the reference
        __m256d acc = _mm256_setzero_pd();
        std::size_t k = 0;
        for (; k + 2 <= n; k += 2) {
            const __m256d av = _mm256_loadu_pd(a_ptr + 2 * (i * n + k));
            const __m128d b0 = _mm_loadu_pd(b_ptr + 2 * (k * n + i));
            const __m128d b1 = _mm_loadu_pd(b_ptr + 2 * ((k + 1) * n + i));
            const __m256d bv = _mm256_set_m128d(b1, b0);
            const __m256d are = _mm256_movedup_pd(av);       // (a0r,a0r,a1r,a1r)
            const __m256d aim = _mm256_permute_pd(av, 0xF);  // (a0i,a0i,a1i,a1i)
            acc = cmul_acc(acc, are, aim, bv);
        }
        __m128d lo = _mm256_castpd256_pd128(acc);
        const __m128d hi = _mm256_extractf128_pd(acc, 1);
        double s0r = _mm_cvtsd_f64(lo);
        double s0i = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
        const double s1r = _mm_cvtsd_f64(hi);
        const double s1i = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
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

#endif // x86_64
