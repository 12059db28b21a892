#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

namespace epwind {

using Complex = std::complex<double>;

/// Univariate complex polynomial, coefficients in ascending degree.
///
/// Canonical form carries no trailing (high-degree) exact zeros; the zero
/// polynomial has an empty coefficient list and degree -1.
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<Complex> coeffs);
    ComplexPoly(std::initializer_list<Complex> coeffs);

    static ComplexPoly constant(Complex c);
    static ComplexPoly monomial(Complex c, int degree);
    /// Monic polynomial with the given roots.
    static ComplexPoly from_roots(const std::vector<Complex>& roots);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    /// Coefficient of z^k; zero beyond the degree.
    Complex coeff(int k) const;
    Complex leading() const;
    double max_abs_coeff() const;

    Complex operator()(Complex z) const;
    ComplexPoly derivative(int order = 1) const;

    /// Drop high-degree coefficients below rel_tol * max|coeff|.
    ComplexPoly trimmed(double rel_tol) const;

    ComplexPoly& operator+=(const ComplexPoly& rhs);
    ComplexPoly& operator-=(const ComplexPoly& rhs);
    ComplexPoly& operator*=(Complex s);
    friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
    friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
    friend ComplexPoly operator*(ComplexPoly a, Complex s) { return a *= s; }
    friend ComplexPoly operator*(Complex s, ComplexPoly a) { return a *= s; }
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
    ComplexPoly operator-() const;

    /// Quotient of a division known to be exact; the remainder is discarded.
    ComplexPoly divide_exact(const ComplexPoly& divisor) const;

    friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

    std::string to_string(char var = 'z') const;

private:
    void canonicalize();
    std::vector<Complex> coeffs_;
};

}  // namespace epwind
