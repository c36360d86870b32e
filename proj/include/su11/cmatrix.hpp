#pragma once

#include "su11/kernels.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace su11 {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row-major, backed by the kernel layer.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static CMatrix identity(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    cdouble* data() noexcept { return data_.data(); }
    const cdouble* data() const noexcept { return data_.data(); }

    CMatrix adjoint() const;
    cdouble trace() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cdouble s);

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    /// max_j sum_i |a_ij|
    double one_norm() const;
    /// max_ij |a_ij|
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const;

private:
    std::size_t n_ = 0;
    std::vector<cdouble> data_;
};

/// tr(A * B) without forming the product.
cdouble trace_of_product(const CMatrix& a, const CMatrix& b);

/// Matrix exponential by scaling-and-squaring with a Taylor core.
CMatrix expm(const CMatrix& a);

/// True iff the Hermitian part of `a` has all eigenvalues > -floor,
/// decided by a Cholesky factorization of a + floor * I.
bool is_positive_semidefinite(const CMatrix& a, double floor);

} // namespace su11
