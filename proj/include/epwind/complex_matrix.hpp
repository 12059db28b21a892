#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace epwind {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Dimension 1..16.
class ComplexMatrix {
public:
    static constexpr std::size_t kMaxDimension = 16;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<Complex>& d);

    std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    bool all_finite() const;
    double frobenius_norm() const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<Complex> operator*(const std::vector<Complex>& v) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

}  // namespace epwind
