#include "epwind/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "epwind/continuation.hpp"
#include "epwind/error.hpp"
#include "epwind/linalg.hpp"

namespace epwind {

LoopPath::LoopPath(std::vector<Complex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw InvalidInput("loop needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Complex v = vertices_[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidInput("loop vertex " + std::to_string(i) + " is not finite");
        if (v == segment_end(i))
            throw InvalidInput("loop vertices " + std::to_string(i) + " and " +
                               std::to_string((i + 1) % vertices_.size()) + " coincide");
    }
}

double LoopPath::perimeter() const {
    double p = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) p += std::abs(segment_end(i) - vertices_[i]);
    return p;
}

LoopPath circle_loop(Complex center, double radius, double start_angle, bool clockwise, int vertices) {
    if (!(radius > 0.0)) throw InvalidInput("circle radius must be positive");
    if (vertices < 3) throw InvalidInput("circle needs at least 3 vertices");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(vertices));
    const double sign = clockwise ? -1.0 : 1.0;
    for (int k = 0; k < vertices; ++k) {
        const double a = start_angle + sign * 2.0 * std::numbers::pi * k / vertices;
        pts.push_back(center + std::polar(radius, a));
    }
    return LoopPath(std::move(pts));
}

LoopPath reversed(const LoopPath& loop) {
    std::vector<Complex> pts{loop.basepoint()};
    const auto& v = loop.vertices();
    for (std::size_t i = v.size() - 1; i >= 1; --i) pts.push_back(v[i]);
    return LoopPath(std::move(pts));
}

LoopPath concatenated(const LoopPath& a, const LoopPath& b) {
    if (a.basepoint() != b.basepoint()) throw InvalidInput("concatenated loops must share the basepoint");
    std::vector<Complex> pts = a.vertices();
    pts.push_back(a.basepoint());
    pts.insert(pts.end(), b.vertices().begin() + 1, b.vertices().end());
    return LoopPath(std::move(pts));
}

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double distance_to_line(Complex p, const BranchLine& line) {
    const auto& pts = line.polyline;
    if (pts.size() == 1) return std::abs(p - pts[0]);
    double best = std::numeric_limits<double>::infinity();
    const std::size_t segs = line.closed ? pts.size() : pts.size() - 1;
    for (std::size_t i = 0; i < segs; ++i)
        best = std::min(best, point_segment_distance(p, pts[i], pts[(i + 1) % pts.size()]));
    return best;
}

}  // namespace

void validate_loop(const LoopPath& loop, std::span<const BranchLine> lines,
                   std::span<const DegeneracyPoint> degeneracies) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Complex v = loop.vertices()[i];
        for (const auto& d : degeneracies) {
            if (std::abs(v - d.z0) < LoopPath::kDegeneracyClearance) {
                throw NonGenericLoop("loop vertex " + std::to_string(i) + " at " + format_complex(v, 12) +
                                         " lies within 1e-3 of the degeneracy at " + format_complex(d.z0, 12) +
                                         "; move it by at least 1e-2",
                                     1e-2);
            }
        }
        for (const auto& line : lines) {
            if (distance_to_line(v, line) < LoopPath::kLineClearance) {
                throw NonGenericLoop("loop vertex " + std::to_string(i) + " at " + format_complex(v, 12) +
                                         " lies within 1e-6 of branch line " + line.label + "; move it by at least 1e-5",
                                     1e-5);
            }
        }
    }
}

namespace {

// Bisects the loop parameter inside [s_lo, s_hi] of segment (p, q) so that the
// slot jump straddles the returned parameter.
double refine_parameter(const CrossingRefinement& r, Complex p, Complex q, double s_lo, double s_hi,
                        const Permutation& expected) {
    const PolyMatrixFamily& f = *r.family;
    auto at = [&](double s) { return p + s * (q - p); };
    Complex z_lo = at(s_lo);
    std::vector<Complex> eig_lo = eigenvalues(f.evaluate(z_lo), r.eig_tol);
    Permutation sort_lo = sort_sheets(eig_lo, r.criterion).from_input;
    {
        const Complex z_hi = at(s_hi);
        const std::vector<Complex> eig_hi = eigenvalues(f.evaluate(z_hi), r.eig_tol);
        const Permutation whole = slot_transition(sort_lo, track_segment(f, z_lo, eig_lo, z_hi, eig_hi, r.eig_tol),
                                                  sort_sheets(eig_hi, r.criterion).from_input);
        if (!(whole == expected)) return std::numeric_limits<double>::quiet_NaN();
    }
    for (int it = 0; it < 40; ++it) {
        const double s_mid = 0.5 * (s_lo + s_hi);
        const Complex z_mid = at(s_mid);
        const std::vector<Complex> eig_mid = eigenvalues(f.evaluate(z_mid), r.eig_tol);
        const Permutation sort_mid = sort_sheets(eig_mid, r.criterion).from_input;
        const Permutation step =
            slot_transition(sort_lo, track_segment(f, z_lo, eig_lo, z_mid, eig_mid, r.eig_tol), sort_mid);
        if (step.is_identity()) {
            s_lo = s_mid;
            z_lo = z_mid;
            eig_lo = eig_mid;
            sort_lo = sort_mid;
        } else if (step == expected) {
            s_hi = s_mid;
        } else {
            break;
        }
    }
    return 0.5 * (s_lo + s_hi);
}

}  // namespace

std::vector<CrossingEvent> find_crossings(const LoopPath& loop, std::span<const BranchLine> lines,
                                          const CrossingRefinement* refine) {
    std::vector<CrossingEvent> events;
    const double perimeter = loop.perimeter();
    double cum = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Complex p = loop.vertices()[i];
        const Complex q = loop.segment_end(i);
        const Complex d1 = q - p;
        const double len1 = std::abs(d1);
        for (const auto& line : lines) {
            const auto& pts = line.polyline;
            if (pts.size() < 2) continue;
            const std::size_t segs = line.closed ? pts.size() : pts.size() - 1;
            for (std::size_t s = 0; s < segs; ++s) {
                const Complex a = pts[s];
                const Complex b = pts[(s + 1) % pts.size()];
                const Complex d2 = b - a;
                const double len2 = std::abs(d2);
                if (len2 == 0.0) continue;
                const double denom = cross(d1, d2);
                const Complex ap = a - p;
                const double sin_angle = std::abs(denom) / (len1 * len2);
                if (sin_angle < 1e-9) {
                    // Parallel: only an overlap is a problem.
                    if (std::abs(cross(ap, d1)) / len1 <= LoopPath::kLineClearance) {
                        const double t0 = dot(ap, d1) / (len1 * len1);
                        const double t1 = dot(b - p, d1) / (len1 * len1);
                        if (std::max(t0, t1) >= 0.0 && std::min(t0, t1) <= 1.0) {
                            throw DegenerateCrossing("loop segment " + std::to_string(i) + " runs along branch line " +
                                                     line.label + " near " + format_complex(a, 12) +
                                                     "; perturb the loop by at least 1e-5");
                        }
                    }
                    continue;
                }
                const double sl = cross(ap, d2) / denom;  // along the loop segment
                const double ul = cross(ap, d1) / denom;  // along the line segment
                const bool last = !line.closed && s + 1 == segs;
                if (sl < 0.0 || sl >= 1.0 || ul < 0.0 || (last ? ul > 1.0 : ul >= 1.0)) continue;

                const Complex normal = d2 / len2 * Complex{0.0, -1.0};
                CrossingEvent ev;
                ev.line_id = line.id;
                ev.label = line.label;
                ev.direction = dot(d1, normal) > 0.0 ? CrossingDirection::AtoB : CrossingDirection::BtoA;
                ev.permutation =
                    ev.direction == CrossingDirection::AtoB ? line.permutation : line.permutation.inverse();
                double sp = sl;
                if (refine && refine->family) {
                    const double half = len2 / len1;
                    const double refined =
                        refine_parameter(*refine, p, q, std::max(0.0, sl - half), std::min(1.0, sl + half),
                                         ev.permutation);
                    if (std::isfinite(refined)) sp = std::clamp(refined, 0.0, std::nextafter(1.0, 0.0));
                }
                ev.point = p + sp * d1;
                ev.t = (cum + sp * len1) / perimeter;
                events.push_back(std::move(ev));
            }
        }
        cum += len1;
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const CrossingEvent& a, const CrossingEvent& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < events.size(); ++i) {
        if ((events[i].t - events[i - 1].t) * perimeter < 1e-9) {
            throw DegenerateCrossing("loop meets lines " + events[i - 1].label + " and " + events[i].label +
                                     " at the same point " + format_complex(events[i].point, 12) +
                                     " (a line junction); perturb the loop by at least 1e-5");
        }
    }
    return events;
}

Permutation holonomy_from_crossings(std::span<const CrossingEvent> events, std::size_t n) {
    Permutation total = Permutation::identity(n);
    for (const auto& e : events) {
#ifdef EPWIND_FAULT_REVERSE_COMPOSITION
        total = total * e.permutation;
#else
        total = e.permutation * total;
#endif
    }
    return total;
}

Permutation holonomy_by_tracking(const PolyMatrixFamily& f, const LoopPath& loop, SortCriterion c, double eig_tol) {
    const std::vector<Complex> eig0 = eigenvalues(f.evaluate(loop.basepoint()), eig_tol);
    const std::size_t n = eig0.size();
    std::vector<Complex> current = eig0;
    // map[i]: canonical index currently carrying the value that started at index i.
    std::vector<int> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = static_cast<int>(i);

    const double h0 = loop.perimeter() / 1024.0;
    const double h_min = std::ldexp(h0, -40);
    double h = h0;
    int streak = 0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Complex p = loop.vertices()[i];
        const Complex q = loop.segment_end(i);
        const double len = std::abs(q - p);
        double s = 0.0;
        while (s < len) {
            const double step = std::min(h, len - s);
            const bool final = s + step >= len;
            const Complex z = final ? q : p + (s + step) / len * (q - p);
            std::vector<Complex> next = eigenvalues(f.evaluate(z), eig_tol);
            const auto m = match_step(current, next);
            if (!m) {
                h *= 0.5;
                streak = 0;
                if (h < h_min) {
                    throw StepCollapse("tracking step collapsed after 40 halvings near z = " +
                                       format_complex(p + s / len * (q - p), 12) +
                                       " (loop passes too close to a degeneracy); move the loop by at least 1e-3");
                }
                continue;
            }
            for (auto& idx : map) idx = (*m)[static_cast<std::size_t>(idx)];
            current = std::move(next);
            s = final ? len : s + step;
            if (++streak >= 2 && h < h0) {
                h = std::min(h0, 2.0 * h);
                streak = 0;
            }
        }
    }
    const Permutation sort0 = sort_sheets(eig0, c).from_input;
    return slot_transition(sort0, map, sort0);
}

namespace {

template <typename F>
auto tagged(const char* tag, F&& body) -> decltype(body()) {
    const std::string prefix = std::string("[") + tag + "] ";
    try {
        return body();
    } catch (const StepCollapse& e) {
        throw StepCollapse(prefix + e.what());
    } catch (const DegenerateCrossing& e) {
        throw DegenerateCrossing(prefix + e.what());
    } catch (const NonGenericLoop& e) {
        throw NonGenericLoop(prefix + e.what(), e.suggested_perturbation());
    } catch (const MatchingAmbiguous& e) {
        throw MatchingAmbiguous(prefix + e.what());
    } catch (const NonConvergence& e) {
        throw NonConvergence(prefix + e.what());
    } catch (const Error& e) {
        throw Error(e.category(), prefix + e.what());
    }
}

}  // namespace

HolonomyReport verify_holonomy(const PolyMatrixFamily& f, const LoopPath& loop, std::span<const BranchLine> lines,
                               SortCriterion c, std::span<const DegeneracyPoint> degeneracies, double eig_tol) {
    HolonomyReport report;
    const std::size_t n = f.size();
    tagged("crossings", [&] {
        validate_loop(loop, lines, degeneracies);
        const CrossingRefinement refine{&f, c, eig_tol};
        report.events = find_crossings(loop, lines, &refine);
        report.product = holonomy_from_crossings(report.events, n);
    });
    report.oracle = tagged("tracking", [&] { return holonomy_by_tracking(f, loop, c, eig_tol); });
    report.agree = report.product == report.oracle;

    const std::vector<Complex> eigs = eigenvalues(f.evaluate(loop.basepoint()), eig_tol);
    report.basepoint_values = sort_sheets(eigs, c).values;
    for (std::size_t i = 0; i < report.basepoint_values.size(); ++i)
        report.slot_labels.push_back("s" + std::to_string(i + 1) + " = " + format_complex(report.basepoint_values[i], 12));
    return report;
}

}  // namespace epwind
