#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "epwind/complex_matrix.hpp"
#include "epwind/poly.hpp"

namespace epwind {

/// n x n matrix whose entries are polynomials in one complex parameter z.
class PolyMatrixFamily {
public:
    static constexpr int kMaxEntryDegree = 8;
    static constexpr std::size_t kMaxSymbolicDimension = 8;

    PolyMatrixFamily(std::vector<std::vector<ComplexPoly>> entries, std::string source_text = {});

    std::size_t size() const noexcept { return entries_.size(); }
    const ComplexPoly& entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    const std::string& source_text() const noexcept { return source_text_; }
    int max_entry_degree() const;

    /// Entrywise Horner evaluation.
    ComplexMatrix evaluate(Complex z) const;

private:
    std::vector<std::vector<ComplexPoly>> entries_;
    std::string source_text_;
};

/// Parses the bracketed matrix-family grammar, e.g. "[[1, z], [z, -1]]".
///
/// Throws SyntaxError (1-based line/column), NonSquareError, DegreeLimitError
/// for exponents above 8, DimensionLimitError above 16 rows.
PolyMatrixFamily parse_family(std::string_view text);

/// det(lambda I - H(z)) as a polynomial in lambda with coefficients in z.
class BivariatePoly {
public:
    explicit BivariatePoly(std::vector<ComplexPoly> lambda_coeffs);

    /// Degree in lambda.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of lambda^k as a polynomial in z.
    const ComplexPoly& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<ComplexPoly>& coeffs() const noexcept { return coeffs_; }

    /// Specialise z, giving a polynomial in lambda.
    ComplexPoly at(Complex z) const;
    /// d/d lambda.
    BivariatePoly lambda_derivative() const;

private:
    std::vector<ComplexPoly> coeffs_;
};

/// Exact expansion of det(lambda I - H(z)) over the polynomial ring. n <= 8.
BivariatePoly char_poly_in_z(const PolyMatrixFamily& f);

/// Res_lambda(p, dp/dlambda), scaled to unit leading-coefficient magnitude.
/// The numeric Sylvester determinant is sampled on circles of several radii
/// and interpolated; each coefficient comes from the best-conditioned circle.
///
/// A 1 x 1 family yields the constant 1 (no eigenvalue pairs). Throws
/// DimensionLimitError for n > 8.
ComplexPoly discriminant_in_z(const PolyMatrixFamily& f);

/// Res_lambda(p, dp/dlambda) at one z, unnormalised, by direct elimination
/// of the numeric Sylvester matrix.
Complex discriminant_value(const BivariatePoly& p, Complex z);

/// Determinant of a square matrix over C[z], by Bareiss elimination. Exact
/// in exact arithmetic; intermediate divisions lose accuracy at high degree.
ComplexPoly bareiss_determinant(std::vector<std::vector<ComplexPoly>> m);

}  // namespace epwind
