#include "su11/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace su11 {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

cdouble CMatrix::trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cdouble s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.n_);
    kernels::cmatmul(a.data(), b.data(), c.data(), a.n_);
    return c;
}

double CMatrix::one_norm() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
}

double CMatrix::hermiticity_error() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            best = std::max(best, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return best;
}

cdouble trace_of_product(const CMatrix& a, const CMatrix& b) {
    return kernels::ctrace_dot(a.data(), b.data(), a.dim());
}

CMatrix expm(const CMatrix& a) {
    const std::size_t n = a.dim();
    const double nrm = a.one_norm();
    int squarings = 0;
    if (nrm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    }
    CMatrix scaled = a;
    scaled *= std::ldexp(1.0, -squarings);

    CMatrix result = CMatrix::identity(n);
    result += scaled;
    CMatrix term = scaled;
    for (int k = 2; k <= 64; ++k) {
        term = term * scaled;
        term *= 1.0 / static_cast<double>(k);
        result += term;
        if (term.one_norm() <= 1e-18 * result.one_norm()) break;
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

bool is_positive_semidefinite(const CMatrix& a, double floor) {
    // Cholesky of H + floor*I where H is the Hermitian part of a.
    const std::size_t n = a.dim();
    CMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    for (std::size_t i = 0; i < n; ++i) h(i, i) += floor;

    std::vector<cdouble> l(n * n, cdouble{});
    for (std::size_t j = 0; j < n; ++j) {
        double diag = h(j, j).real();
        for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l[j * n + k]);
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        l[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cdouble s = h(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * std::conj(l[j * n + k]);
            l[i * n + j] = s / ljj;
        }
    }
    return true;
}

} // namespace su11
