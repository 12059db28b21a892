#include "epwind/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "epwind/error.hpp"

namespace epwind {

PolyMatrixFamily::PolyMatrixFamily(std::vector<std::vector<ComplexPoly>> entries, std::string source_text)
    : entries_(std::move(entries)), source_text_(std::move(source_text)) {
    const std::size_t n = entries_.size();
    if (n == 0) throw NonSquareError("matrix family has no rows");
    if (n > ComplexMatrix::kMaxDimension) {
        throw DimensionLimitError("matrix family dimension " + std::to_string(n) + " exceeds " +
                                  std::to_string(ComplexMatrix::kMaxDimension));
    }
    for (const auto& row : entries_) {
        if (row.size() != n) throw NonSquareError("matrix family is not square");
        for (const auto& p : row) {
            if (p.degree() > kMaxEntryDegree) {
                throw DegreeLimitError("entry degree " + std::to_string(p.degree()) + " exceeds " +
                                       std::to_string(kMaxEntryDegree));
            }
        }
    }
}

int PolyMatrixFamily::max_entry_degree() const {
    int d = -1;
    for (const auto& row : entries_)
        for (const auto& p : row) d = std::max(d, p.degree());
    return d;
}

ComplexMatrix PolyMatrixFamily::evaluate(Complex z) const {
    const std::size_t n = size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entries_[i][j](z);
    return m;
}

BivariatePoly::BivariatePoly(std::vector<ComplexPoly> lambda_coeffs) : coeffs_(std::move(lambda_coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ComplexPoly BivariatePoly::at(Complex z) const {
    std::vector<Complex> c(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](z);
    return ComplexPoly(std::move(c));
}

BivariatePoly BivariatePoly::lambda_derivative() const {
    std::vector<ComplexPoly> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<double>(k));
    if (d.empty()) d.emplace_back();
    return BivariatePoly(std::move(d));
}

namespace {

using LambdaPoly = std::vector<ComplexPoly>;

LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

void lp_add(LambdaPoly& acc, const LambdaPoly& x, double sign) {
    if (x.size() > acc.size()) acc.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) acc[k] += x[k] * Complex{sign};
}

void require_symbolic_dimension(const PolyMatrixFamily& f, const char* op) {
    if (f.size() > PolyMatrixFamily::kMaxSymbolicDimension) {
        throw DimensionLimitError(std::string(op) + ": dimension " + std::to_string(f.size()) +
                                  " exceeds the symbolic limit of " +
                                  std::to_string(PolyMatrixFamily::kMaxSymbolicDimension));
    }
}

}  // namespace

BivariatePoly char_poly_in_z(const PolyMatrixFamily& f) {
    require_symbolic_dimension(f, "char_poly_in_z");
    const std::size_t n = f.size();

    // Entries of lambda*I - H(z).
    std::vector<std::vector<LambdaPoly>> b(n, std::vector<LambdaPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            b[i][j] = {-f.entry(i, j)};
            if (i == j) b[i][j].push_back(ComplexPoly::constant(1.0));
        }

    // Leibniz sum factored over column subsets: partial[mask] is the signed
    // sum over injections of rows 0..|mask|-1 onto the columns in mask.
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<LambdaPoly> partial(full + 1);
    partial[0] = {ComplexPoly::constant(1.0)};
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto row = static_cast<std::size_t>(std::popcount(mask)) - 1;
        LambdaPoly acc{ComplexPoly{}};
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            const std::uint32_t rest = mask & ~(1u << c);
            // Inversions added by placing column c after the columns in rest.
            const int inversions = std::popcount(rest >> (c + 1));
            lp_add(acc, lp_mul(b[row][c], partial[rest]), inversions % 2 == 0 ? 1.0 : -1.0);
        }
        partial[mask] = std::move(acc);
    }
    LambdaPoly det = std::move(partial[full]);
    det.resize(n + 1);
    det[n] = ComplexPoly::constant(1.0);
    return BivariatePoly(std::move(det));
}

ComplexPoly bareiss_determinant(std::vector<std::vector<ComplexPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return ComplexPoly::constant(1.0);
    constexpr double kNoise = 1e-12;
    double sign = 1.0;
    ComplexPoly prev = ComplexPoly::constant(1.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        double best = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            const double s = m[i][k].max_abs_coeff();
            if (s > best) {
                best = s;
                p = i;
            }
        }
        if (best == 0.0) return {};
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                ComplexPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = num.trimmed(kNoise).divide_exact(prev);
            }
            m[i][k] = ComplexPoly{};
        }
        prev = m[k][k];
    }
    return m[n - 1][n - 1] * Complex{sign};
}

namespace {

// Determinant of the Sylvester matrix of p and q = p' at one z, by Gaussian
// elimination with partial pivoting.
Complex sylvester_determinant(const ComplexPoly& p, const ComplexPoly& q) {
    const auto n = static_cast<std::size_t>(p.degree());
    const std::size_t size = 2 * n - 1;
    std::vector<Complex> a(size * size);
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * size + c]; };
    for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t k = 0; k <= n; ++k) at(r, r + (n - k)) = p.coeff(static_cast<int>(k));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t k = 0; k < n; ++k) at(n - 1 + s, s + (n - 1 - k)) = q.coeff(static_cast<int>(k));

    Complex det = 1.0;
    for (std::size_t k = 0; k < size; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < size; ++i)
            if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
        if (at(piv, k) == Complex{}) return 0.0;
        if (piv != k) {
            for (std::size_t c = k; c < size; ++c) std::swap(at(k, c), at(piv, c));
            det = -det;
        }
        det *= at(k, k);
        for (std::size_t i = k + 1; i < size; ++i) {
            const Complex m = at(i, k) / at(k, k);
            for (std::size_t c = k + 1; c < size; ++c) at(i, c) -= m * at(k, c);
        }
    }
    return det;
}

}  // namespace

Complex discriminant_value(const BivariatePoly& p, Complex z) {
    if (p.degree() < 2) return 1.0;
    return sylvester_determinant(p.at(z), p.lambda_derivative().at(z));
}

ComplexPoly discriminant_in_z(const PolyMatrixFamily& f) {
    require_symbolic_dimension(f, "discriminant_in_z");
    const std::size_t n = f.size();
    if (n == 1) return ComplexPoly::constant(1.0);

    const BivariatePoly p = char_poly_in_z(f);
    const BivariatePoly q = p.lambda_derivative();
    // Roots move like z^d, so the discriminant has degree <= d*n*(n-1).
    const int bound = f.max_entry_degree() * static_cast<int>(n * (n - 1));
    const std::size_t m = static_cast<std::size_t>(bound) + 1;

    // Sample on circles of radius 2^-4 .. 2^10 and interpolate each by an
    // inverse DFT. Coefficient k is taken from the circle where its rounding
    // error, about eps * m * max|samples| / rho^k, is smallest.
    constexpr double kEps = 2.220446049250313e-16;
    std::vector<Complex> coeffs(m);
    std::vector<double> noise(m, std::numeric_limits<double>::infinity());
    std::vector<Complex> values(m);
    for (int e = -4; e <= 10; ++e) {
        const double rho = std::ldexp(1.0, e);
        double peak = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const Complex z = std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
            values[j] = sylvester_determinant(p.at(z), q.at(z));
            peak = std::max(peak, std::abs(values[j]));
        }
        for (std::size_t k = 0; k < m; ++k) {
            const double scale = std::pow(rho, static_cast<double>(k));
            const double err = 16.0 * kEps * static_cast<double>(m) * peak / scale;
            if (!(err < noise[k])) continue;
            Complex sum = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                sum += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % m) /
                                                       static_cast<double>(m));
            coeffs[k] = sum / (static_cast<double>(m) * scale);
            noise[k] = err;
        }
    }
    // Coefficients at the noise floor are zero.
    bool any = false;
    for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(coeffs[k]) <= 100.0 * noise[k]) {
            coeffs[k] = 0.0;
        } else {
            any = true;
        }
    }
    if (!any) {
        throw DegenerateFamily("discriminant vanishes identically: the spectrum of " +
                               (f.source_text().empty() ? std::string("the family") : f.source_text()) +
                               " is degenerate for every z");
    }
    ComplexPoly res(std::move(coeffs));
    return res * Complex{1.0 / std::abs(res.leading())};
}

}  // namespace epwind
