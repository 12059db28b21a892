#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epwind/assignment.hpp"
#include "epwind/error.hpp"
#include "epwind/linalg.hpp"
#include "support/cases.hpp"

using namespace epwind;
using Catch::Approx;

namespace {

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    const Assignment as = match_min_distance(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[static_cast<std::size_t>(as.target[i])]));
    return worst;
}

ComplexMatrix fixture_at_zero() { return {{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}; }

}  // namespace

TEST_CASE("eigenvalues of small known matrices", "[linalg]") {
    SECTION("identity") {
        const auto e = eigenvalues(ComplexMatrix::identity(3));
        REQUIRE(e.size() == 3);
        for (Complex v : e) CHECK(std::abs(v - 1.0) < 1e-14);
    }
    SECTION("fixture at z = 0") {
        const auto e = eigenvalues(fixture_at_zero());
        REQUIRE(e.size() == 3);
        CHECK(std::abs(e[0] + 1.0) < 1e-14);
        CHECK(std::abs(e[1]) < 1e-14);
        CHECK(std::abs(e[2] - 1.0) < 1e-14);
    }
    SECTION("diagonal, canonical order") {
        const auto e = eigenvalues(ComplexMatrix::diagonal({Complex{0, 2}, -3.0}));
        CHECK(std::abs(e[0] + 3.0) < 1e-14);
        CHECK(std::abs(e[1] - Complex(0, 2)) < 1e-14);
    }
    SECTION("Jordan block keeps multiplicity") {
        const auto e = eigenvalues(ComplexMatrix{{2, 1}, {0, 2}});
        CHECK(std::abs(e[0] - 2.0) < 1e-7);
        CHECK(std::abs(e[1] - 2.0) < 1e-7);
    }
    SECTION("non-finite input") {
        ComplexMatrix m = ComplexMatrix::identity(2);
        m(0, 1) = std::nan("");
        CHECK_THROWS_AS(eigenvalues(m), InvalidInput);
    }
}

TEST_CASE("characteristic polynomials", "[linalg]") {
    const ComplexPoly p1 = char_poly(ComplexMatrix{{5}});
    CHECK(p1 == ComplexPoly{-5.0, 1.0});
    const ComplexPoly px = char_poly(ComplexMatrix{{0, 1}, {1, 0}});
    CHECK(px == ComplexPoly{-1.0, 0.0, 1.0});
    const ComplexPoly ph = char_poly(fixture_at_zero());
    CHECK(ph == ComplexPoly{0.0, -1.0, 0.0, 1.0});
}

TEST_CASE("polynomial roots", "[linalg]") {
    auto near = [](const std::vector<Complex>& got, std::vector<Complex> want, double tol) {
        return got.size() == want.size() && multiset_distance(got, want) < tol;
    };
    CHECK(near(poly_roots(ComplexPoly{1.0, 0.0, 1.0}), {Complex{0, 1}, Complex{0, -1}}, 1e-14));
    CHECK(near(poly_roots(ComplexPoly{0.0, -1.0, 0.0, 1.0}), {-1.0, 0.0, 1.0}, 1e-14));

    SECTION("double root is one cluster") {
        const auto c = root_clusters(ComplexPoly::from_roots({1.5, 1.5, Complex{0, 2}}));
        REQUIRE(c.size() == 2);
        const auto& dbl = c[0].multiplicity == 2 ? c[0] : c[1];
        CHECK(dbl.multiplicity == 2);
        CHECK(std::abs(dbl.value - 1.5) < 1e-10);
    }
    SECTION("constant polynomial has no roots") { CHECK_THROWS(poly_roots(ComplexPoly{3.0})); }
}

TEST_CASE("minimum pairwise gap", "[linalg]") {
    const std::vector<Complex> a{1.0, -1.0, 0.0};
    CHECK(min_pairwise_gap(a) == Approx(1.0));
    const std::vector<Complex> b{Complex{0, 1}, Complex{0, 1}};
    CHECK(min_pairwise_gap(b) == 0.0);
    const double s = 1.0 / std::sqrt(3.0);
    ComplexMatrix h{{1, s, 0}, {s, -1, 0}, {0, 0, 2 * s}};
    CHECK(min_pairwise_gap(eigenvalues(h)) < 1e-12);
}

TEST_CASE("gap is invariant under reordering", "[linalg][property]") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> v(2 + static_cast<std::size_t>(trial % 7));
        for (auto& x : v) x = testing::unit_disk(rng);
        const double g = min_pairwise_gap(v);
        std::shuffle(v.begin(), v.end(), rng);
        CHECK(min_pairwise_gap(v) == g);
    }
}

TEST_CASE("eigenpair residuals for n up to 8", "[linalg][property]") {
    testing::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
        const ComplexMatrix m = testing::random_matrix(rng, n);
        const double norm = m.frobenius_norm();
        for (Complex lambda : eigenvalues(m)) {
            const auto v = inverse_iteration(m, lambda);
            const auto mv = m * v;
            double r = 0.0;
            for (std::size_t i = 0; i < n; ++i) r += std::norm(mv[i] - lambda * v[i]);
            CHECK(std::sqrt(r) <= 1e-9 * norm);
        }
    }
}

TEST_CASE("eigenvalues agree with characteristic polynomial roots", "[linalg][property]") {
    testing::Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        const ComplexMatrix m = testing::random_matrix(rng, n);
        CHECK(multiset_distance(eigenvalues(m), poly_roots(char_poly(m))) <= 1e-8);
    }
}

TEST_CASE("root residuals for separated roots up to degree 12", "[linalg][property]") {
    testing::Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int degree = 1 + trial % 12;
        std::vector<Complex> want;
        while (static_cast<int>(want.size()) < degree) {
            const Complex r = 2.0 * testing::unit_disk(rng);
            if (std::all_of(want.begin(), want.end(), [&](Complex w) { return std::abs(w - r) > 0.2; })) want.push_back(r);
        }
        const ComplexPoly p = ComplexPoly::from_roots(want) * testing::unit_disk(rng);
        if (p.is_zero()) continue;
        const auto got = poly_roots(p);
        REQUIRE(got.size() == want.size());
        for (Complex r : got) CHECK(std::abs(p(r)) <= 1e-10 * p.max_abs_coeff());
        CHECK(multiset_distance(got, want) < 1e-8);
    }
}

TEST_CASE("assignment is optimal against brute force", "[linalg][property]") {
    testing::Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        std::vector<Complex> a(n), b(n);
        for (auto& x : a) x = testing::unit_disk(rng);
        for (auto& x : b) x = testing::unit_disk(rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = 1e300, second = 1e300;
        do {
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i) cost += std::abs(a[i] - b[static_cast<std::size_t>(perm[i])]);
            if (cost < best) {
                second = best;
                best = cost;
            } else if (cost < second) {
                second = cost;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        const Assignment as = match_min_distance(a, b);
        CHECK(as.cost == Approx(best).epsilon(1e-12));
        if (n > 1) CHECK(as.runner_up_cost == Approx(second).epsilon(1e-12));
    }
}

TEST_CASE("rank and linear solve", "[linalg]") {
    CHECK(numerical_rank(ComplexMatrix{{1, 2}, {2, 4}}, 1e-12) == 1);
    CHECK(numerical_rank(ComplexMatrix::identity(4), 1e-12) == 4);
    const auto x = solve(ComplexMatrix{{2, 0}, {0, Complex{0, 1}}}, {4.0, 1.0});
    CHECK(std::abs(x[0] - 2.0) < 1e-15);
    CHECK(std::abs(x[1] - Complex(0, -1)) < 1e-15);
    CHECK_THROWS_AS(solve(ComplexMatrix{{1, 1}, {1, 1}}, {1.0, 2.0}), InvalidInput);
}
