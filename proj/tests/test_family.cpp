#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "epwind/error.hpp"
#include "epwind/family.hpp"
#include "epwind/fixture.hpp"
#include "epwind/linalg.hpp"
#include "support/cases.hpp"

using namespace epwind;

namespace {

bool close(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

bool same_poly(const ComplexPoly& a, const ComplexPoly& b, double tol) {
    const int d = std::max(a.degree(), b.degree());
    const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
    for (int k = 0; k <= d; ++k)
        if (std::abs(a.coeff(k) - b.coeff(k)) > tol * scale) return false;
    return true;
}

// Random term in one of the grammar's spellings, with its value at z.
struct Term {
    std::string text;
    std::function<Complex(Complex)> value;
};

Term random_term(testing::Rng& rng) {
    const int form = std::uniform_int_distribution<int>(0, 5)(rng);
    const int power = std::uniform_int_distribution<int>(0, 3)(rng);
    const double a = std::round(testing::uniform(rng, -9.0, 9.0) * 100.0) / 100.0;
    const double b = std::round(testing::uniform(rng, 0.0, 9.0) * 100.0) / 100.0;
    char buf[64];
    Complex c;
    switch (form) {
        case 0: std::snprintf(buf, sizeof buf, "%g", std::abs(a)); c = std::abs(a); break;
        case 1: std::snprintf(buf, sizeof buf, "%gi", b); c = Complex{0, b}; break;
        case 2: std::snprintf(buf, sizeof buf, "i"); c = Complex{0, 1}; break;
        case 3: std::snprintf(buf, sizeof buf, "(%g%+gi)", a, b); c = Complex{a, b}; break;
        case 4: std::snprintf(buf, sizeof buf, "(%g-%gi)", a, b); c = Complex{a, -b}; break;
        default: buf[0] = '\0'; c = 1.0; break;
    }
    std::string text = buf;
    if (form == 5 || power > 0) {
        if (!text.empty()) text += std::bernoulli_distribution(0.5)(rng) ? "*" : " ";
        text += "z";
        if (power > 1 || (power == 1 && std::bernoulli_distribution(0.3)(rng))) text += "^" + std::to_string(power);
    }
    const int p = (form == 5 && power == 0) ? 1 : power;
    return {text, [c, p](Complex z) { return c * std::pow(z, p); }};
}

}  // namespace

TEST_CASE("parse the bundled family", "[family]") {
    const PolyMatrixFamily f = parse_family(fixture::kFamilyText);
    REQUIRE(f.size() == 3);
    CHECK(f.entry(0, 1) == ComplexPoly{0.0, 1.0});
    CHECK(f.entry(2, 2) == ComplexPoly{0.0, 2.0});
    CHECK(f.entry(1, 1) == ComplexPoly{-1.0});
    CHECK(f.entry(0, 2).is_zero());
    CHECK(f.source_text() == fixture::kFamilyText);
    CHECK(f.max_entry_degree() == 1);
}

TEST_CASE("parse scalar and coefficient forms", "[family]") {
    CHECK(parse_family("[[z]]").entry(0, 0) == ComplexPoly{0.0, 1.0});
    CHECK(parse_family("[[2*z]]").entry(0, 0) == ComplexPoly{0.0, 2.0});
    CHECK(parse_family("[[1+0.5i*z^2]]").entry(0, 0) == ComplexPoly{1.0, 0.0, Complex{0, 0.5}});
    CHECK(parse_family("[[(1-2i)]]").entry(0, 0) == ComplexPoly{Complex{1, -2}});
    CHECK(parse_family("[[ -i z ]]").entry(0, 0) == ComplexPoly{0.0, Complex{0, -1}});
    CHECK(parse_family("[[z^0 + z - z]]").entry(0, 0) == ComplexPoly{1.0});
    CHECK(parse_family("[[1e-3 z^8]]").entry(0, 0).degree() == 8);
}

TEST_CASE("parse errors", "[family]") {
    CHECK_THROWS_AS(parse_family("[[1, z], [z]]"), NonSquareError);
    CHECK_THROWS_AS(parse_family("[[1, z]]"), NonSquareError);
    CHECK_THROWS_AS(parse_family("[[z^9]]"), DegreeLimitError);
    CHECK_THROWS_AS(parse_family(""), SyntaxError);
    try {
        parse_family("[[1, z],\n [z, -1]");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 9);
    }
    try {
        parse_family("[[1, 2 +* z]]");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 9);
    }
    std::string big = "[";
    for (int i = 0; i < 17; ++i) {
        big += i ? ",[" : "[";
        for (int j = 0; j < 17; ++j) big += j ? ",0" : "0";
        big += "]";
    }
    CHECK_THROWS_AS(parse_family(big + "]"), DimensionLimitError);
}

TEST_CASE("evaluate by substitution", "[family]") {
    const PolyMatrixFamily f = fixture::family();
    CHECK(f.evaluate(0.0) == ComplexMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}});
    const Complex i{0, 1};
    CHECK(f.evaluate(i) == ComplexMatrix{{1, i, 0}, {i, -1, 0}, {0, 0, 2.0 * i}});
    CHECK(parse_family("[[z]]").evaluate(Complex{3, 4}) == ComplexMatrix{{Complex{3, 4}}});
}

TEST_CASE("characteristic polynomial over z", "[family]") {
    SECTION("bundled family") {
        const BivariatePoly p = char_poly_in_z(fixture::family());
        REQUIRE(p.degree() == 3);
        // (lambda - 2z)(lambda^2 - (1 + z^2))
        CHECK(p.coeff(3) == ComplexPoly{1.0});
        CHECK(p.coeff(2) == ComplexPoly{0.0, -2.0});
        CHECK(p.coeff(1) == ComplexPoly{-1.0, 0.0, -1.0});
        CHECK(p.coeff(0) == ComplexPoly{0.0, 2.0, 0.0, 2.0});
    }
    SECTION("scalar") {
        const BivariatePoly p = char_poly_in_z(parse_family("[[z]]"));
        CHECK(p.coeff(1) == ComplexPoly{1.0});
        CHECK(p.coeff(0) == ComplexPoly{0.0, -1.0});
    }
    SECTION("2x2") {
        const BivariatePoly p = char_poly_in_z(parse_family("[[1, z], [z, -1]]"));
        CHECK(p.coeff(1).is_zero());
        CHECK(p.coeff(0) == ComplexPoly{-1.0, 0.0, -1.0});
    }
    SECTION("dimension limit") {
        std::string text = "[";
        for (int r = 0; r < 9; ++r) {
            text += r ? ",[" : "[";
            for (int c = 0; c < 9; ++c) text += (c ? "," : "") + std::string(r == c ? "z" : "0");
            text += "]";
        }
        CHECK_THROWS_AS(char_poly_in_z(parse_family(text + "]")), DimensionLimitError);
    }
}

TEST_CASE("discriminant roots", "[family]") {
    auto roots_of = [](const char* text) { return poly_roots(discriminant_in_z(parse_family(text))); };
    const auto two = roots_of("[[1, z], [z, -1]]");
    REQUIRE(two.size() == 2);
    CHECK(close(two[0].imag() < 0 ? two[0] : two[1], Complex{0, -1}, 1e-12));
    CHECK(close(two[0].imag() < 0 ? two[1] : two[0], Complex{0, 1}, 1e-12));

    // 4(1 + z^2)(3z^2 - 1)^2 up to scale: the crossings are double roots.
    const double s = 1.0 / std::sqrt(3.0);
    const auto four = root_clusters(discriminant_in_z(fixture::family()));
    REQUIRE(four.size() == 4);
    for (auto [want, mult] : {std::pair{Complex{0, 1}, 1}, {Complex{0, -1}, 1}, {Complex{s, 0}, 2}, {Complex{-s, 0}, 2}}) {
        const auto it = std::min_element(four.begin(), four.end(), [&](const RootCluster& a, const RootCluster& b) {
            return std::abs(a.value - want) < std::abs(b.value - want);
        });
        CHECK(std::abs(it->value - want) < 1e-12);
        CHECK(it->multiplicity == mult);
    }

    const ComplexPoly scalar = discriminant_in_z(parse_family("[[z]]"));
    CHECK(scalar.degree() == 0);
    CHECK(std::abs(scalar.coeff(0)) == Catch::Approx(1.0));

    CHECK_THROWS_AS(discriminant_in_z(parse_family("[[z, 0], [0, z]]")), DegenerateFamily);
}

TEST_CASE("parse and evaluate round trip", "[family][property]") {
    testing::Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        std::vector<std::vector<std::vector<Term>>> terms(n, std::vector<std::vector<Term>>(n));
        std::string text = "[";
        for (std::size_t i = 0; i < n; ++i) {
            text += i ? ", [" : "[";
            for (std::size_t j = 0; j < n; ++j) {
                const int count = std::uniform_int_distribution<int>(1, 4)(rng);
                std::string entry;
                for (int t = 0; t < count; ++t) {
                    Term term = random_term(rng);
                    const bool minus = std::bernoulli_distribution(0.4)(rng);
                    entry += (t == 0 ? (minus ? "-" : "") : (minus ? " - " : " + ")) + term.text;
                    if (minus) {
                        auto v = term.value;
                        term.value = [v](Complex z) { return -v(z); };
                    }
                    terms[i][j].push_back(std::move(term));
                }
                text += (j ? ", " : "") + entry;
            }
            text += "]";
        }
        text += "]";
        INFO(text);
        const PolyMatrixFamily f = parse_family(text);
        for (int k = 0; k < 5; ++k) {
            const Complex z = 1.5 * testing::unit_disk(rng);
            const ComplexMatrix m = f.evaluate(z);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Complex want = 0.0;
                    for (const auto& t : terms[i][j]) want += t.value(z);
                    CHECK(close(m(i, j), want, 1e-12));
                }
        }
    }
}

TEST_CASE("bivariate polynomial matches pointwise characteristic polynomial", "[family][property]") {
    testing::Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        const PolyMatrixFamily f = testing::random_family(rng, n, 2);
        const BivariatePoly p = char_poly_in_z(f);
        for (int k = 0; k < 10; ++k) {
            const Complex z = 1.5 * testing::unit_disk(rng);
            CHECK(same_poly(p.at(z), char_poly(f.evaluate(z)), 1e-10));
        }
    }
}

TEST_CASE("discriminant is a fixed multiple of the squared eigenvalue differences", "[family][property]") {
    testing::Rng rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        const PolyMatrixFamily f = testing::random_family(rng, n, 2);
        ComplexPoly disc;
        try {
            disc = discriminant_in_z(f);
        } catch (const DegenerateFamily&) {
            continue;
        }
        INFO(f.source_text());
        // Reference ratio from the best-conditioned sample.
        struct Sample {
            Complex disc, prod;
            double magnitude;
        };
        std::vector<Sample> samples;
        for (int k = 0; k < 40 && samples.size() < 10; ++k) {
            const Complex z = 1.5 * testing::unit_disk(rng);
            const auto e = eigenvalues(f.evaluate(z));
            if (min_pairwise_gap(e) < 1e-2) continue;
            Complex prod = 1.0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) prod *= (e[a] - e[b]) * (e[a] - e[b]);
            double magnitude = 0.0;
            for (int c = 0; c <= disc.degree(); ++c) magnitude += std::abs(disc.coeff(c)) * std::pow(std::abs(z), c);
            samples.push_back({disc(z), prod, magnitude});
            CHECK(std::abs(disc(z)) > 0.0);
        }
        if (samples.empty()) continue;
        const auto ref = *std::max_element(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
            return std::abs(a.disc) / a.magnitude < std::abs(b.disc) / b.magnitude;
        });
        const Complex ratio = ref.disc / ref.prod;
        for (const auto& smp : samples) CHECK(std::abs(smp.disc - ratio * smp.prod) <= 1e-9 * smp.magnitude);
    }
}

TEST_CASE("discriminant vanishes where a gap scan finds a coalescence", "[family][property]") {
    testing::Rng rng(27);
    int found = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        const PolyMatrixFamily f = testing::random_family(rng, n, 2);
        ComplexPoly disc;
        try {
            disc = discriminant_in_z(f);
        } catch (const DegenerateFamily&) {
            continue;
        }
        auto gap = [&](Complex z) { return min_pairwise_gap(eigenvalues(f.evaluate(z))); };
        const int res = 24;
        const double step = 3.0 / res;
        std::vector<double> g((res + 1) * (res + 1));
        auto node = [&](int j, int k) { return Complex{-1.5 + j * step, -1.5 + k * step}; };
        for (int k = 0; k <= res; ++k)
            for (int j = 0; j <= res; ++j) g[k * (res + 1) + j] = gap(node(j, k));
        for (int k = 1; k < res; ++k)
            for (int j = 1; j < res; ++j) {
                const double here = g[k * (res + 1) + j];
                bool minimum = true;
                for (int dk = -1; dk <= 1; ++dk)
                    for (int dj = -1; dj <= 1; ++dj)
                        if ((dj || dk) && g[(k + dk) * (res + 1) + j + dj] < here) minimum = false;
                if (!minimum) continue;
                // Compass search on the gap from the lattice minimum.
                Complex z = node(j, k);
                double best = here, h = step;
                while (h > 1e-15 && best >= 1e-9) {
                    bool moved = false;
                    for (Complex d : {Complex{h, 0}, Complex{-h, 0}, Complex{0, h}, Complex{0, -h}}) {
                        const double v = gap(z + d);
                        if (v < best) {
                            best = v;
                            z += d;
                            moved = true;
                        }
                    }
                    if (!moved) h *= 0.5;
                }
                if (best >= 1e-6) continue;
                ++found;
                const double scale = disc.max_abs_coeff() * std::pow(1.0 + std::abs(z), disc.degree());
                CHECK(std::abs(disc(z)) <= 1e-8 * scale);
            }
    }
    CHECK(found > 0);
}

TEST_CASE("parser is total on arbitrary bytes", "[family][property]") {
    testing::Rng rng(29);
    const std::string alphabet = "[],+-*^.0123456789eEziI() \n\t\x01\xff";
    const std::vector<std::string> seeds{fixture::kFamilyText, "[[1+0.5i*z^2, (1-2i)], [2*z, z^8]]", "[[z]]"};
    int parsed = 0, rejected = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::string text;
        if (trial % 2 == 0) {
            const int len = std::uniform_int_distribution<int>(0, 40)(rng);
            for (int k = 0; k < len; ++k) text += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
        } else {
            text = seeds[static_cast<std::size_t>(trial) % seeds.size()];
            const int edits = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int k = 0; k < edits && !text.empty(); ++k) {
                const std::size_t at = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
                const char c = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
                switch (k % 3) {
                    case 0: text[at] = c; break;
                    case 1: text.erase(at, 1); break;
                    default: text.insert(at, 1, c); break;
                }
            }
        }
        INFO(text);
        try {
            (void)parse_family(text);
            ++parsed;
        } catch (const SyntaxError& e) {
            ++rejected;
            CHECK(e.line() >= 1);
            CHECK(e.column() >= 1);
            CHECK(e.line() <= 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n')));
            CHECK(static_cast<std::size_t>(e.column()) <= text.size() + 1);
        } catch (const NonSquareError&) {
            ++rejected;
        } catch (const DegreeLimitError&) {
            ++rejected;
        } catch (const DimensionLimitError&) {
            ++rejected;
        }
    }
    CHECK(parsed > 0);
    CHECK(rejected > 0);
}
