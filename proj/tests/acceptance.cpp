// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "epwind/analysis.hpp"
#include "epwind/assignment.hpp"
#include "epwind/error.hpp"
#include "epwind/fixture.hpp"
#include "epwind/linalg.hpp"
#include "support/cases.hpp"

using namespace epwind;
namespace fx = epwind::fixture;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << " (" << title << "): " << o.detail
              << std::endl;
}

std::string states(const std::vector<std::string>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + ")";
}

std::string fmt(double x, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string family_of(const CrossingEvent& e, const std::vector<BranchLine>& lines) {
    for (const auto& l : lines)
        if (l.id == e.line_id) return fx::family_label(l);
    return "?";
}

struct Run {
    int status = -1;
    std::string output;
};

Run run_program(const std::string& command) {
    Run r;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

}  // namespace

int main() {
    const PolyMatrixFamily f = fx::family();
    const Region region = fx::region();
    const SortCriterion real{SortKey::RealPart};
    const auto all_start = Clock::now();

    report(1, "degeneracy census", [&] {
        const auto t0 = Clock::now();
        const auto degs = classify_degeneracies(f, region, real);
        const double dt = seconds_since(t0);
        const double s = 1.0 / std::sqrt(3.0);
        const std::array<Complex, 4> want{Complex{0, 1}, Complex{0, -1}, Complex{s, 0}, Complex{-s, 0}};
        if (degs.size() != 4) return Outcome{false, std::to_string(degs.size()) + " roots found, expected 4"};
        double worst = 0.0;
        std::set<int> used;
        int eps = 0;
        bool eps_at_i = true;
        for (const Complex w : want) {
            int best = -1;
            for (std::size_t k = 0; k < degs.size(); ++k)
                if (best < 0 || std::abs(degs[k].z0 - w) < std::abs(degs[static_cast<std::size_t>(best)].z0 - w))
                    best = static_cast<int>(k);
            used.insert(best);
            worst = std::max(worst, std::abs(degs[static_cast<std::size_t>(best)].z0 - w));
        }
        for (const auto& d : degs) {
            if (d.kind != DegeneracyKind::ExceptionalPoint) continue;
            ++eps;
            eps_at_i = eps_at_i && std::abs(std::abs(d.z0.imag()) - 1.0) < 1e-8 && std::abs(d.z0.real()) < 1e-8;
        }
        const bool ok = used.size() == 4 && worst <= 1e-8 && eps == 2 && eps_at_i && dt <= 5.0;
        return Outcome{ok, "4 roots, max error " + fmt(worst) + ", " + std::to_string(eps) +
                               " exceptional points" + (eps_at_i ? " at +-i" : " (not at +-i)") + ", " + fmt(dt) + " s"};
    });

    std::optional<AnalysisResult> a128, a256;
    double t256 = 0.0;
    report(2, "branch-line census", [&] {
        a128 = analyze(f, region, 128, 128, real);
        const auto t0 = Clock::now();
        a256 = analyze(f, region, 256, 256, real);
        t256 = seconds_since(t0);
        auto census = [](const AnalysisResult& a, int& free_lines, int& ep_lines) {
            std::multiset<std::pair<std::string, std::string>> fams;
            free_lines = ep_lines = 0;
            for (const auto& l : a.lines) {
                fams.insert({fx::family_label(l), l.permutation.cycles()});
                if (l.terminates_at_any(a.degeneracies, DegeneracyKind::ExceptionalPoint)) {
                    ++ep_lines;
                } else {
                    ++free_lines;
                }
            }
            return fams;
        };
        int free128, ep128, free256, ep256;
        const auto c128 = census(*a128, free128, ep128);
        const auto c256 = census(*a256, free256, ep256);
        const bool ok = a128->lines.size() == 4 && free128 == 2 && ep128 == 2 && a256->lines.size() == 4 &&
                        c128 == c256 && free256 == 2 && t256 <= 30.0;
        return Outcome{ok, std::to_string(a128->lines.size()) + " lines at 128 (" + std::to_string(free128) +
                               " not ending at a branch point), " + std::to_string(a256->lines.size()) +
                               " at 256, families " + (c128 == c256 ? "unchanged" : "changed") + ", 256x256 in " +
                               fmt(t256) + " s"};
    });

    report(3, "permutation matrices", [&] {
        if (!a128) return Outcome{false, "no analysis"};
        std::set<std::string> seen;
        std::string detail;
        bool ok = true;
        const double h = 1e-3 * a128->edges.cell_size;
        for (const auto& l : a128->lines) {
            const std::string fam = fx::family_label(l);
            const std::size_t m = middle_crossing(l);
            const Permutation p = crossing_permutation(f, l.polyline[m], l.normals[m], real, h);
            const bool match = p.matrix() == fx::matrix_for(fam).matrix();
            ok = ok && match;
            seen.insert(fam);
            detail += l.label + "->" + fam + (match ? " ok; " : " MISMATCH " + p.cycles() + "; ");
        }
        const Permutation axis = crossing_permutation(f, {0.0, 1.5}, 1.0, real, h);
        ok = ok && axis == fx::m1() && seen == std::set<std::string>{"M1", "M2", "M3"};
        return Outcome{ok, detail + "1.5i with normal +1 -> " + axis.cycles()};
    });

    report(4, "loop products", [&] {
        if (!a128) return Outcome{false, "no analysis"};
        const std::vector<std::string> s{"s1", "s2", "s3"};
        std::string detail;
        bool ok = true;
        struct Case {
            const char* name;
            LoopPath loop;
            std::string events;
            std::vector<std::string> result;
        };
        const Case cases[2] = {{"larger", fx::larger_loop(), "M1,M3,M2", {"s2", "s1", "s3"}},
                               {"smaller", fx::smaller_loop(), "M1", {"s3", "s2", "s1"}}};
        for (const auto& c : cases) {
            const auto t0 = Clock::now();
            const HolonomyReport r = verify_holonomy(f, c.loop, a128->lines, real, a128->degeneracies);
            const double dt = seconds_since(t0);
            std::string seq;
            for (const auto& e : r.events) seq += (seq.empty() ? "" : ",") + family_of(e, a128->lines);
            const auto moved = r.product.apply(s);
            const bool good = seq == c.events && moved == c.result && r.agree && dt <= 2.0;
            ok = ok && good;
            if (!detail.empty()) detail += "; ";
            detail += std::string(c.name) + ": (" + seq + ") -> " + states(moved) + ", oracle " +
                      (r.agree ? "agrees" : "DISAGREES") + ", " + fmt(dt) + " s";
        }
        return Outcome{ok, detail};
    });

    report(5, "basepoint ordering", [&] {
        const Complex z2 = fx::kSmallBasepoint;
        const auto forms = fx::closed_form(z2);
        const auto slots = sort_sheets(eigenvalues(f.evaluate(z2)), real).values;
        const Complex want[3] = {forms[0], forms[2], forms[1]};
        double err = 0.0;
        for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(slots[k] - want[k]));
        const bool ok = err < 1e-10 && slots[0].real() > slots[1].real() && slots[1].real() > slots[2].real();
        return Outcome{ok, "slots at 0.3+0.8i = (" + format_complex(slots[0], 6) + ", " + format_complex(slots[1], 6) +
                               ", " + format_complex(slots[2], 6) + "), max error vs closed forms " + fmt(err)};
    });

    report(6, "property suite", [&] {
        const auto t0 = Clock::now();
        testing::Rng rng(20261014);
        const Region box{-1.5, 1.5, -1.5, 1.5};
        int families = 0, skipped = 0, fails = 0, loops = 0, nontrivial = 0, null_loops = 0, orientation = 0;
        std::string first;
        auto fail = [&](const std::string& why) {
            if (fails++ == 0) first = why;
        };
        while (families < 100) {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
            const int degree = std::uniform_int_distribution<int>(1, 2)(rng);
            const int res = std::uniform_int_distribution<int>(64, 96)(rng);
            const PolyMatrixFamily fam = testing::random_family(rng, n, degree);
            const std::string tag = "family " + std::to_string(families) + " " + fam.source_text().substr(0, 60);
            try {
                const AnalysisResult a = analyze(fam, box, res, res, real);
                const double margin = 2.0 * a.grid.cell_diameter();
                const auto loop = testing::random_clear_loop(rng, a, margin);
                if (!loop) {
                    ++skipped;
                    continue;
                }
                ++families;
                ++loops;
                const HolonomyReport fwd = verify_holonomy(fam, *loop, a.lines, real, a.degeneracies);
                if (!fwd.product.is_identity()) ++nontrivial;
                if (!fwd.agree) fail(tag + ": product " + fwd.product.cycles() + " vs oracle " + fwd.oracle.cycles());
                const HolonomyReport back = verify_holonomy(fam, reversed(*loop), a.lines, real, a.degeneracies);
                if (!(back.product == fwd.product.inverse()) || !(back.oracle == fwd.oracle.inverse()))
                    fail(tag + ": reversal does not invert");
                if (const auto null = testing::random_null_loop(rng, a, margin)) {
                    ++null_loops;
                    const HolonomyReport z = verify_holonomy(fam, *null, a.lines, real, a.degeneracies);
                    if (!z.product.is_identity() || !z.oracle.is_identity()) fail(tag + ": null loop not identity");
                }
                const double h = 1e-3 * a.edges.cell_size;
                for (std::size_t li = 0; li < a.lines.size() && li < 2; ++li) {
                    const auto& l = a.lines[li];
                    const std::size_t m = middle_crossing(l);
                    const Permutation p = crossing_permutation(fam, l.polyline[m], l.normals[m], real, h);
                    const Permutation q = crossing_permutation(fam, l.polyline[m], -l.normals[m], real, h);
                    ++orientation;
                    std::vector<std::vector<int>> transposed = p.matrix();
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) transposed[i][j] = p.matrix()[j][i];
                    if (q.matrix() != transposed) fail(tag + ": orientation reversal is not the transpose");
                }
            } catch (const std::exception& e) {
                ++families;
                fail(tag + ": " + e.what());
            }
        }
        const double dt = seconds_since(t0);
        const bool ok = fails == 0 && families >= 100 && dt <= 120.0;
        return Outcome{ok, std::to_string(families) + " families (" + std::to_string(skipped) + " redrawn without a clear loop), " +
                               std::to_string(loops) + " loops + reversals (" + std::to_string(nontrivial) + " non-trivial), " + std::to_string(null_loops) + " null loops, " +
                               std::to_string(orientation) + " orientation checks, " + std::to_string(fails) +
                               " failures, " + fmt(dt) + " s" + (first.empty() ? "" : "; first: " + first)};
    });

    report(7, "numerical core", [&] {
        testing::Rng rng(7);
        double worst_residual = 0.0, worst_match = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
            const ComplexMatrix m = testing::random_matrix(rng, n);
            const auto eig = eigenvalues(m);
            const double norm = m.frobenius_norm();
            for (Complex lambda : eig) {
                const auto v = inverse_iteration(m, lambda);
                const auto mv = m * v;
                double r = 0.0;
                for (std::size_t i = 0; i < n; ++i) r += std::norm(mv[i] - lambda * v[i]);
                worst_residual = std::max(worst_residual, std::sqrt(r) / norm);
            }
            const auto roots = poly_roots(char_poly(m));
            const Assignment as = match_min_distance(eig, roots);
            for (std::size_t i = 0; i < n; ++i)
                worst_match = std::max(worst_match, std::abs(eig[i] - roots[static_cast<std::size_t>(as.target[i])]));
        }
        const bool ok = worst_residual <= 1e-9 && worst_match <= 1e-8;
        return Outcome{ok, "200 matrices n <= 6: max residual/||H|| " + fmt(worst_residual) +
                               ", max eigenvalue/char-poly root distance " + fmt(worst_match)};
    });

    report(8, "mutation sensitivity", [&] {
        const Run clean = run_program(std::string(EPWIND_BIN) + " selftest");
        const Run compose = run_program(std::string(EPWIND_MUT_COMPOSE_BIN) + " selftest");
        const Run sort = run_program(std::string(EPWIND_MUT_SORT_BIN) + " selftest");
        const bool compose_ok =
            compose.status == 4 && compose.output.find("first failing assertion: loop-product") != std::string::npos;
        const bool sort_ok =
            sort.status == 4 && sort.output.find("first failing assertion: basepoint-ordering") != std::string::npos;
        const bool ok = clean.status == 0 && compose_ok && sort_ok;
        return Outcome{ok, "clean exit " + std::to_string(clean.status) + "; reversed composition exit " +
                               std::to_string(compose.status) + (compose_ok ? " on loop-product" : " (wrong assertion)") +
                               "; ascending sort exit " + std::to_string(sort.status) +
                               (sort_ok ? " on basepoint-ordering" : " (wrong assertion)")};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << fmt(seconds_since(all_start)) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
