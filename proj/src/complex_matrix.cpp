#include "epwind/complex_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "epwind/error.hpp"

namespace epwind {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n, Complex{}) {
    if (n == 0 || n > kMaxDimension) {
        throw DimensionLimitError("matrix dimension " + std::to_string(n) + " outside 1.." +
                                  std::to_string(kMaxDimension));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_) throw NonSquareError("matrix rows must all have length " + std::to_string(n_));
        std::size_t j = 0;
        for (const auto& v : row) (*this)(i, j++) = v;
        ++i;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch");
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<Complex> ComplexMatrix::operator*(const std::vector<Complex>& v) const {
    if (v.size() != n_) throw std::invalid_argument("dimension mismatch");
    std::vector<Complex> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch");
    ComplexMatrix out(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= rhs.data_[k];
    return out;
}

std::string format_complex(std::complex<double> z, int digits) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
    return buf;
}

}  // namespace epwind
