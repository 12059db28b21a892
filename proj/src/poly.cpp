#include "epwind/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epwind/error.hpp"

namespace epwind {

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

ComplexPoly::ComplexPoly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { canonicalize(); }

ComplexPoly ComplexPoly::constant(Complex c) { return ComplexPoly(std::vector<Complex>{c}); }

ComplexPoly ComplexPoly::monomial(Complex c, int degree) {
    std::vector<Complex> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(const std::vector<Complex>& roots) {
    ComplexPoly p = constant(1.0);
    for (const auto& r : roots) p = p * ComplexPoly{-r, 1.0};
    return p;
}

void ComplexPoly::canonicalize() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex ComplexPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

Complex ComplexPoly::leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

double ComplexPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex ComplexPoly::operator()(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ComplexPoly ComplexPoly::derivative(int order) const {
    std::vector<Complex> c = coeffs_;
    for (int o = 0; o < order && !c.empty(); ++o) {
        std::vector<Complex> d(c.size() > 1 ? c.size() - 1 : 0);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
        c = std::move(d);
    }
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::trimmed(double rel_tol) const {
    const double cut = rel_tol * max_abs_coeff();
    std::vector<Complex> c = coeffs_;
    while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
    return ComplexPoly(std::move(c));
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    canonicalize();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    canonicalize();
    return *this;
}

ComplexPoly& ComplexPoly::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    canonicalize();
    return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator-() const {
    ComplexPoly out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

ComplexPoly ComplexPoly::divide_exact(const ComplexPoly& divisor) const {
    if (divisor.is_zero()) throw InvalidInput("polynomial division by zero");
    const int dq = degree() - divisor.degree();
    if (is_zero() || dq < 0) return {};
    std::vector<Complex> rem = coeffs_;
    std::vector<Complex> q(static_cast<std::size_t>(dq) + 1);
    const Complex lead = divisor.leading();
    const auto dd = static_cast<std::size_t>(divisor.degree());
    for (int k = dq; k >= 0; --k) {
        const auto ku = static_cast<std::size_t>(k);
        const Complex t = rem[ku + dd] / lead;
        q[ku] = t;
        for (std::size_t j = 0; j <= dd; ++j) rem[ku + j] -= t * divisor.coeffs_[j];
    }
    return ComplexPoly(std::move(q));
}

std::string ComplexPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Complex c = coeff(k);
        if (c == Complex{}) continue;
        if (!first) os << " + ";
        first = false;
        os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (k >= 1) os << '*' << var;
        if (k >= 2) os << '^' << k;
    }
    return os.str();
}

}  // namespace epwind
