#include "epwind/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "epwind/error.hpp"

namespace epwind {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction to upper Hessenberg form, in place.
void reduce_to_hessenberg(ComplexMatrix& h) {
    const std::size_t n = h.size();
    if (n < 3) return;
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double alpha = 0.0;
        for (std::size_t i = 0; i < len; ++i) alpha += std::norm(h(k + 1 + i, k));
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        const Complex x0 = h(k + 1, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
        for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
        v[0] += phase * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        for (std::size_t j = k; j < n; ++j) {
            Complex s{};
            for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            s *= beta;
            for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t j = 0; j < len; ++j) s += h(i, k + 1 + j) * v[j];
            s *= beta;
            for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens {
    double c;
    Complex s;
};

// Rotation G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) return {1.0, 0.0};
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const double rho = std::hypot(ax, ay);
    return {ax / rho, (x / ax) * std::conj(y) / rho};
}

// One explicit shifted QR sweep on the active window [lo, hi].
void qr_sweep(ComplexMatrix& h, std::size_t lo, std::size_t hi, Complex mu) {
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<Givens> rot;
    rot.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens g = make_givens(h(k, k), h(k + 1, k));
        rot.push_back(g);
        for (std::size_t j = k; j <= hi; ++j) {
            const Complex a = h(k, j);
            const Complex b = h(k + 1, j);
            h(k, j) = g.c * a + g.s * b;
            h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
        }
        h(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens& g = rot[k - lo];
        const std::size_t last = std::min(k + 1, hi);
        for (std::size_t i = lo; i <= last; ++i) {
            const Complex a = h(i, k);
            const Complex b = h(i, k + 1);
            h(i, k) = g.c * a + std::conj(g.s) * b;
            h(i, k + 1) = -g.s * a + g.c * b;
        }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
    const Complex a = h(hi - 1, hi - 1);
    const Complex b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1);
    const Complex d = h(hi, hi);
    const Complex half_tr = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const Complex mu1 = half_tr + disc;
    const Complex mu2 = half_tr - disc;
    return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

double abs_horner(const std::vector<Complex>& c, double r) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

// Newton refinement that only accepts steps reducing |p|.
Complex newton_polish(const ComplexPoly& p, const ComplexPoly& dp, Complex z, int steps) {
    Complex best = z;
    double best_val = std::abs(p(z));
    for (int s = 0; s < steps && best_val > 0.0; ++s) {
        const Complex d = dp(best);
        if (d == Complex{}) break;
        const Complex cand = best - p(best) / d;
        const double val = std::abs(p(cand));
        if (!(val < best_val)) break;
        best = cand;
        best_val = val;
    }
    return best;
}

std::vector<Complex> aberth(const ComplexPoly& monic, double tol) {
    const int n = monic.degree();
    const std::vector<Complex>& c = monic.coeffs();
    if (n == 1) return {-c[0] / c[1]};

    double radius = std::pow(std::abs(c[0]), 1.0 / n);
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        z[static_cast<std::size_t>(k)] =
            std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.7);
    }
    const ComplexPoly dp = monic.derivative();
    const double rel = std::max(tol, 8.0 * kEps * (n + 1));
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    constexpr int kBudget = 1000;
    bool all_done = false;
    for (int iter = 0; iter < kBudget && !all_done; ++iter) {
        all_done = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            const Complex pv = monic(z[i]);
            if (std::abs(pv) <= rel * abs_horner(c, std::abs(z[i]))) {
                done[i] = true;
                continue;
            }
            all_done = false;
            Complex dv = dp(z[i]);
            if (dv == Complex{}) dv = Complex{kEps, kEps};
            const Complex ratio = pv / dv;
            Complex sum{};
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != i) {
                    const Complex diff = z[i] - z[j];
                    if (diff != Complex{}) sum += 1.0 / diff;
                }
            }
            const Complex w = ratio / (1.0 - ratio * sum);
            z[i] -= w;
            if (std::abs(w) <= kEps * std::abs(z[i])) done[i] = true;
        }
    }
    if (!all_done && !std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
        throw NonConvergence("poly_roots: Aberth iteration exceeded 1000 sweeps (degree " +
                             std::to_string(n) + ")");
    }
    for (auto& r : z) r = newton_polish(monic, dp, r, 3);
    return z;
}

// Polished centre if `members` form a genuine multiple root, else nullopt.
std::optional<Complex> verify_cluster(const ComplexPoly& p, const std::vector<Complex>& members) {
    const int m = static_cast<int>(members.size());
    Complex centre{};
    for (const auto& r : members) centre += r;
    centre /= static_cast<double>(m);
    const ComplexPoly q = p.derivative(m - 1);
    const ComplexPoly dq = q.derivative();
    for (int s = 0; s < 30; ++s) {
        const Complex d = dq(centre);
        if (d == Complex{}) break;
        const Complex step = q(centre) / d;
        centre -= step;
        if (std::abs(step) <= kEps * (1.0 + std::abs(centre))) break;
    }
    for (int k = 0; k < m - 1; ++k) {
        const ComplexPoly pk = p.derivative(k);
        const double bound = abs_horner(pk.coeffs(), std::abs(centre));
        if (std::abs(pk(centre)) > 1e-10 * bound) return std::nullopt;
    }
    return centre;
}

}  // namespace

void sort_canonical(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m, double tol) {
    if (!m.all_finite()) throw InvalidInput("eigenvalues: matrix has non-finite entries");
    if (!(tol > 0.0)) throw InvalidInput("eigenvalues: tolerance must be positive");
    const std::size_t n = m.size();
    std::vector<Complex> eig;
    eig.reserve(n);
    ComplexMatrix h = m;
    reduce_to_hessenberg(h);
    const double norm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
    const double dtol = std::max(tol, kEps);

    const std::size_t budget = 100 * n;
    std::size_t iterations = 0;
    std::size_t since_deflation = 0;
    std::size_t hi = n - 1;
    while (true) {
        if (hi == 0) {
            eig.push_back(h(0, 0));
            break;
        }
        std::size_t lo = hi;
        while (lo > 0) {
            double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (scale == 0.0) scale = norm;
            if (std::abs(h(lo, lo - 1)) <= dtol * scale) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.push_back(h(hi, hi));
            --hi;
            since_deflation = 0;
            continue;
        }
        if (iterations >= budget) {
            throw NonConvergence("eigenvalues: shifted QR exceeded " + std::to_string(budget) +
                                 " iterations (n=" + std::to_string(n) + ")");
        }
        ++iterations;
        ++since_deflation;
        Complex mu;
        if (since_deflation % 11 == 10) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            mu = wilkinson_shift(h, hi);
        }
        qr_sweep(h, lo, hi, mu);
    }
    sort_canonical(eig);
    return eig;
}

ComplexPoly char_poly(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    // Coefficients from the highest power down.
    std::vector<Complex> vect{1.0, -m(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<Complex> t(r + 2);
        t[0] = 1.0;
        t[1] = -m(r, r);
        std::vector<Complex> x(r);
        for (std::size_t i = 0; i < r; ++i) x[i] = m(i, r);
        for (std::size_t k = 2; k < r + 2; ++k) {
            Complex dot{};
            for (std::size_t j = 0; j < r; ++j) dot += m(r, j) * x[j];
            t[k] = -dot;
            std::vector<Complex> next(r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) next[i] += m(i, j) * x[j];
            x = std::move(next);
        }
        std::vector<Complex> out(r + 2);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += t[i - j] * vect[j];
        vect = std::move(out);
    }
    std::reverse(vect.begin(), vect.end());
    return ComplexPoly(std::move(vect));
}

std::vector<RootCluster> root_clusters(const ComplexPoly& p, double tol) {
    if (p.degree() < 1) throw InvalidInput("poly_roots: degree must be at least 1");
    const Complex lead = p.leading();
    std::vector<Complex> c = p.coeffs();
    for (auto& v : c) v /= lead;

    int zero_mult = 0;
    while (zero_mult < static_cast<int>(c.size()) - 1 && c[static_cast<std::size_t>(zero_mult)] == Complex{})
        ++zero_mult;
    const ComplexPoly monic(std::vector<Complex>(c.begin() + zero_mult, c.end()));
    const ComplexPoly full(c);

    std::vector<Complex> roots;
    if (monic.degree() >= 1) roots = aberth(monic, tol);

    // Single-linkage grouping followed by a multiplicity check.
    const std::size_t nr = roots.size();
    std::vector<int> group(nr, -1);
    int groups = 0;
    for (std::size_t i = 0; i < nr; ++i) {
        if (group[i] >= 0) continue;
        group[i] = groups;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < nr; ++b) {
                if (group[b] >= 0) continue;
                const double link = 1e-3 * std::max(1.0, std::abs(roots[a]));
                if (std::abs(roots[a] - roots[b]) <= link) {
                    group[b] = groups;
                    stack.push_back(b);
                }
            }
        }
        ++groups;
    }

    std::vector<RootCluster> out;
    if (zero_mult > 0) out.push_back({Complex{}, zero_mult});
    for (int g = 0; g < groups; ++g) {
        std::vector<Complex> members;
        for (std::size_t i = 0; i < nr; ++i)
            if (group[i] == g) members.push_back(roots[i]);
        while (members.size() > 1) {
            if (auto centre = verify_cluster(monic, members)) {
                out.push_back({*centre, static_cast<int>(members.size())});
                members.clear();
                break;
            }
            // Peel off the member farthest from the mean and retry.
            Complex mean{};
            for (const auto& r : members) mean += r;
            mean /= static_cast<double>(members.size());
            auto far = std::max_element(members.begin(), members.end(), [&](const Complex& a, const Complex& b) {
                return std::abs(a - mean) < std::abs(b - mean);
            });
            out.push_back({*far, 1});
            members.erase(far);
        }
        if (members.size() == 1) out.push_back({members.front(), 1});
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<Complex> poly_roots(const ComplexPoly& p, double tol) {
    std::vector<Complex> out;
    for (const auto& cl : root_clusters(p, tol))
        for (int k = 0; k < cl.multiplicity; ++k) out.push_back(cl.value);
    sort_canonical(out);
    return out;
}

double min_pairwise_gap(std::span<const Complex> values) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) best = std::min(best, std::abs(values[i] - values[j]));
    return best;
}

std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol) {
    const std::size_t n = m.size();
    ComplexMatrix a = m;
    const double cut = rel_tol * std::max(m.frobenius_norm(), std::numeric_limits<double>::min());
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = k;
        std::size_t pj = k;
        double best = -1.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a(i, j)) > best) {
                    best = std::abs(a(i, j));
                    pi = i;
                    pj = j;
                }
        if (best <= cut) break;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pi, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pj));
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b, bool regularize) {
    const std::size_t n = a.size();
    const double floor = kEps * std::max(a.frobenius_norm(), 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        if (std::abs(a(k, k)) <= (regularize ? floor : 0.0)) {
            if (!regularize) throw InvalidInput("solve: singular matrix");
            a(k, k) = floor;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            if (f == Complex{}) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        Complex s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * b[j];
        b[k] = s / a(k, k);
    }
    return b;
}

}  // namespace

std::vector<Complex> solve(const ComplexMatrix& m, std::vector<Complex> b) {
    if (b.size() != m.size()) throw InvalidInput("solve: dimension mismatch");
    return lu_solve(m, std::move(b), false);
}

std::vector<Complex> inverse_iteration(const ComplexMatrix& m, Complex lambda, int sweeps) {
    const std::size_t n = m.size();
    ComplexMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Complex{1.0 + 0.1 * static_cast<double>(i), 0.3};
    for (int s = 0; s < sweeps; ++s) {
        x = lu_solve(shifted, x, true);
        double nrm = 0.0;
        for (const auto& v : x) nrm += std::norm(v);
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
        for (auto& v : x) v /= nrm;
    }
    return x;
}

}  // namespace epwind
