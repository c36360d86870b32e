#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Dense complex kernels behind the Fock-space engine.  Every backend performs
// the same floating-point operations in the same order, so scalar and SIMD
// results are bit-for-bit identical; the equivalence suite asserts exact
// equality.  No FMA contraction is used anywhere (the library is built with
// -ffp-contract=off and the SIMD paths use separate mul/add intrinsics).

namespace su11::kernels {

using cd = std::complex<double>;

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

/// Highest-priority backend supported by the running CPU.
Backend best_available();

/// Backend used by the dispatched entry points below.
Backend active_backend();

/// Selects a backend; returns false (and leaves the selection unchanged)
/// if the CPU does not support it.
bool set_backend(Backend b);

/// C = A * B for row-major n x n complex matrices.  C must not alias A or B.
void cmatmul(const cd* a, const cd* b, cd* c, std::size_t n);

/// tr(A * B) = sum_{i,k} A[i,k] * B[k,i].
cd ctrace_dot(const cd* a, const cd* b, std::size_t n);

namespace detail {
void cmatmul_scalar(const cd* a, const cd* b, cd* c, std::size_t n);
cd ctrace_dot_scalar(const cd* a, const cd* b, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void cmatmul_avx2(const cd* a, const cd* b, cd* c, std::size_t n);
cd ctrace_dot_avx2(const cd* a, const cd* b, std::size_t n);
#endif
#if defined(__aarch64__)
void cmatmul_neon(const cd* a, const cd* b, cd* c, std::size_t n);
cd ctrace_dot_neon(const cd* a, const cd* b, std::size_t n);
#endif
} // namespace detail

} // namespace su11::kernels
