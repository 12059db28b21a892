#include "epwind/selftest.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "epwind/analysis.hpp"
#include "epwind/error.hpp"
#include "epwind/fixture.hpp"
#include "epwind/linalg.hpp"

namespace epwind {

bool SelftestResult::passed() const { return first_failure() == nullptr; }

const SelftestAssertion* SelftestResult::first_failure() const {
    for (const auto& a : assertions)
        if (!a.passed) return &a;
    return nullptr;
}

void print_selftest(std::ostream& out, const SelftestResult& result) {
    for (const auto& a : result.assertions)
        out << (a.passed ? "[PASS] " : "[FAIL] ") << a.name << ": " << a.detail << '\n';
}

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::string states(const std::vector<std::string>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + ")";
}

// Failure with a message; thrown inside checks.
struct Failed {
    std::string detail;
};

void require(bool ok, const std::string& detail) {
    if (!ok) throw Failed{detail};
}

class Runner {
public:
    void check(const std::string& name, const std::function<std::string()>& body) {
        SelftestAssertion a{name, false, ""};
        try {
            a.detail = body();
            a.passed = true;
        } catch (const Failed& f) {
            a.detail = f.detail;
        } catch (const std::exception& e) {
            a.detail = std::string("exception: ") + e.what();
        }
        result.assertions.push_back(std::move(a));
    }

    SelftestResult result;
};

}  // namespace

SelftestResult run_selftest() {
    Runner run;
    const PolyMatrixFamily f = fixture::family();
    const SortCriterion c{SortKey::RealPart};
    std::optional<AnalysisResult> analysis;
    std::string analysis_error;
    try {
        analysis = analyze(f, fixture::region(), fixture::kResolution, fixture::kResolution, c);
    } catch (const std::exception& e) {
        analysis_error = e.what();
    }
    auto need_analysis = [&]() -> const AnalysisResult& {
        require(analysis.has_value(), "analysis failed: " + analysis_error);
        return *analysis;
    };

    run.check("fixture-spectrum", [&] {
        const ComplexMatrix h0 = f.evaluate(0.0);
        require(h0 == ComplexMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}, "H(0) differs from [[1,0,0],[0,-1,0],[0,0,0]]");
        const Complex i{0.0, 1.0};
        require(f.evaluate(i) == ComplexMatrix{{1, i, 0}, {i, -1, 0}, {0, 0, 2.0 * i}}, "H(i) differs from direct substitution");
        const auto eig = eigenvalues(h0);
        require(std::abs(eig[0] + 1.0) < 1e-12 && std::abs(eig[1]) < 1e-12 && std::abs(eig[2] - 1.0) < 1e-12,
                "eigenvalues of H(0) are not {-1, 0, 1}");
        return std::string("H(0) has eigenvalues {-1, 0, 1}");
    });

    run.check("degeneracy-census", [&] {
        const auto& a = need_analysis();
        require(a.degeneracies.size() == 4, "expected 4 degeneracies, found " + std::to_string(a.degeneracies.size()));
        const double s = 1.0 / std::sqrt(3.0);
        const Complex expected[4] = {{-s, 0.0}, {0.0, -1.0}, {0.0, 1.0}, {s, 0.0}};
        int eps = 0;
        for (const Complex want : expected) {
            const DegeneracyPoint* found = nullptr;
            for (const auto& d : a.degeneracies)
                if (!found || std::abs(d.z0 - want) < std::abs(found->z0 - want)) found = &d;
            require(std::abs(found->z0 - want) <= 1e-8, "no degeneracy within 1e-8 of " + format_complex(want, 12));
            const auto& d = *found;
            const bool is_ep = std::abs(d.z0.real()) < 1e-8;
            const DegeneracyKind kind = is_ep ? DegeneracyKind::ExceptionalPoint : DegeneracyKind::NonDefectiveCrossing;
            require(d.kind == kind, format_complex(d.z0, 8) + " classified " + to_string(d.kind));
            require(d.defective == is_ep, format_complex(d.z0, 8) + " fails the Jordan rank cross-check");
            if (is_ep) {
                ++eps;
                // The monodromy must exchange the slots holding +-sqrt(1+z^2).
                const Complex base = d.z0 + d.radius;
                const auto forms = fixture::closed_form(base);
                const auto sorted = sort_sheets(eigenvalues(f.evaluate(base)), c).values;
                int plus = -1, minus = -1;
                for (int slot = 0; slot < 3; ++slot) {
                    if (std::abs(sorted[slot] - forms[0]) < 1e-8) plus = slot;
                    if (std::abs(sorted[slot] - forms[1]) < 1e-8) minus = slot;
                }
                require(plus >= 0 && minus >= 0, "cannot locate the square-root sheets near " + format_complex(d.z0, 8));
                require(d.local_monodromy == Permutation::transposition(3, plus, minus),
                        "monodromy " + d.local_monodromy.cycles() + " at " + format_complex(d.z0, 8) +
                            " does not swap the square-root sheets");
            }
        }
        require(eps == 2, "expected 2 exceptional points, found " + std::to_string(eps));
        return std::string("4 roots at +-i and +-1/sqrt(3); exceptional points at +-i only");
    });

    run.check("basepoint-ordering", [&] {
        const std::vector<Complex> trio{1.0, 0.0, -1.0};
        const auto at0 = sort_sheets(trio, c).values;
        require(at0 == std::vector<Complex>{1.0, 0.0, -1.0}, "sorting {1, 0, -1} by real part does not give (1, 0, -1)");
        const Complex z2 = fixture::kSmallBasepoint;
        const auto forms = fixture::closed_form(z2);
        const auto slots = sort_sheets(eigenvalues(f.evaluate(z2)), c).values;
        const Complex want[3] = {forms[0], forms[2], forms[1]};
        for (int s = 0; s < 3; ++s) {
            require(std::abs(slots[s] - want[s]) < 1e-10,
                    "slot " + std::to_string(s + 1) + " at z2 holds " + format_complex(slots[s], 8) + ", expected " +
                        format_complex(want[s], 8));
        }
        require(slots[0].real() > slots[1].real() && slots[1].real() > slots[2].real(),
                "real parts at z2 are not strictly decreasing");
        return "z2 = 0.3+0.8i slots (+sqrt(1+z^2), 2z, -sqrt(1+z^2)) = (" + format_complex(slots[0], 6) + ", " +
               format_complex(slots[1], 6) + ", " + format_complex(slots[2], 6) + ")";
    });

    run.check("branch-line-census", [&] {
        const auto& a = need_analysis();
        require(a.lines.size() == 4, "expected 4 branch lines, found " + std::to_string(a.lines.size()));
        int at_ep = 0;
        int m1 = 0, m2 = 0, m3 = 0;
        for (const auto& line : a.lines) {
            if (line.terminates_at_any(a.degeneracies, DegeneracyKind::ExceptionalPoint)) ++at_ep;
            const std::string fam = fixture::family_label(line);
            m1 += fam == "M1";
            m2 += fam == "M2";
            m3 += fam == "M3";
        }
        require(at_ep == 2, std::to_string(at_ep) + " lines end at exceptional points, expected 2");
        require(m1 == 2 && m2 == 1 && m3 == 1, "line families (axis, left, right) = (" + std::to_string(m1) + ", " +
                                                   std::to_string(m2) + ", " + std::to_string(m3) + "), expected (2, 1, 1)");
        return std::string("4 lines, 2 ending at exceptional points, 2 not ending at a branch point");
    });

    run.check("permutation-matrices", [&] {
        const auto& a = need_analysis();
        const double h = 1e-3 * a.edges.cell_size;
        for (const auto& line : a.lines) {
            const std::size_t m = middle_crossing(line);
            const Permutation want = fixture::matrix_for(fixture::family_label(line));
            const Permutation fwd = crossing_permutation(f, line.polyline[m], line.normals[m], c, h);
            const Permutation back = crossing_permutation(f, line.polyline[m], -line.normals[m], c, h);
            require(fwd == want, line.label + " crosses as " + fwd.cycles() + ", expected " + want.cycles());
            require(back == want.inverse(), line.label + " reversed crosses as " + back.cycles());
        }
        const Permutation at = crossing_permutation(f, {0.0, 1.5}, 1.0, c, h);
        require(at == fixture::m1(), "crossing at 1.5i gives " + at.cycles() + ", expected M1 = (1 3)");
        return std::string("M1 = (1 3), M2 = (2 3), M3 = (1 2) on their line families");
    });

    std::optional<HolonomyReport> larger, smaller;
    auto reports = [&]() {
        const auto& a = need_analysis();
        if (!larger) larger = verify_holonomy(f, fixture::larger_loop(), a.lines, c, a.degeneracies);
        if (!smaller) smaller = verify_holonomy(f, fixture::smaller_loop(), a.lines, c, a.degeneracies);
    };
    auto family_of = [&](const CrossingEvent& e) {
        for (const auto& line : need_analysis().lines)
            if (line.id == e.line_id) return fixture::family_label(line);
        return std::string("?");
    };

    run.check("loop-events", [&] {
        reports();
        std::string big, small;
        for (const auto& e : larger->events) {
            big += (big.empty() ? "" : ",") + family_of(e);
            require(e.permutation == fixture::matrix_for(family_of(e)), "event on " + e.label + " carries " + e.permutation.cycles());
        }
        for (const auto& e : smaller->events) small += (small.empty() ? "" : ",") + family_of(e);
        require(big == "M1,M3,M2", "larger loop crosses (" + big + "), expected (M1,M3,M2)");
        require(small == "M1", "smaller loop crosses (" + small + "), expected (M1)");
        return std::string("larger loop crosses (M1,M3,M2); smaller loop crosses (M1)");
    });

    run.check("loop-product", [&] {
        reports();
        const std::vector<std::string> s{"s1", "s2", "s3"};
        const std::vector<std::string> chain[3] = {{"s3", "s2", "s1"}, {"s2", "s3", "s1"}, {"s2", "s1", "s3"}};
        Matrix expected = Permutation::identity(3).matrix();
        for (std::size_t k = 0; k < larger->events.size(); ++k) {
            expected = mat_mul(fixture::matrix_for(family_of(larger->events[k])).matrix(), expected);
            const std::span<const CrossingEvent> prefix(larger->events.data(), k + 1);
            const Permutation p = holonomy_from_crossings(prefix, 3);
            require(p.matrix() == expected, "product after " + std::to_string(k + 1) +
                                                " crossings is " + p.cycles() + ", not the left-multiplied matrix product");
            if (k < 3) {
                require(p.apply(s) == chain[k], "after " + std::to_string(k + 1) + " crossings the states are " +
                                                    states(p.apply(s)) + ", expected " + states(chain[k]));
            }
        }
        require(larger->product.matrix() == Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
                "larger loop product " + larger->product.cycles() + " is not (s2,s1,s3)");
        require(smaller->product == fixture::m1() && smaller->product.apply(s) == chain[0],
                "smaller loop product " + smaller->product.cycles() + " is not (s3,s2,s1)");
        return std::string("M2 M3 M1 (s1,s2,s3) = (s2,s1,s3); M1 (s1,s2,s3) = (s3,s2,s1)");
    });

    run.check("oracle-agreement", [&] {
        reports();
        require(larger->agree, "larger loop: product " + larger->product.cycles() + " vs tracking " + larger->oracle.cycles());
        require(smaller->agree, "smaller loop: product " + smaller->product.cycles() + " vs tracking " + smaller->oracle.cycles());
        return "tracking gives " + larger->oracle.cycles() + " and " + smaller->oracle.cycles();
    });

    return run.result;
}

}  // namespace epwind
