#include "epwind/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

#include "epwind/continuation.hpp"
#include "epwind/error.hpp"
#include "epwind/holonomy.hpp"
#include "epwind/linalg.hpp"
#include "epwind/parallel.hpp"

namespace epwind {

std::string to_string(DegeneracyKind kind) {
    switch (kind) {
        case DegeneracyKind::ExceptionalPoint: return "ExceptionalPoint";
        case DegeneracyKind::NonDefectiveCrossing: return "NonDefectiveCrossing";
        case DegeneracyKind::Unclassified: break;
    }
    return "Unclassified";
}

std::string to_string(LineEnd end) {
    switch (end) {
        case LineEnd::Degeneracy: return "degeneracy";
        case LineEnd::Boundary: return "boundary";
        case LineEnd::Junction: return "junction";
        case LineEnd::Closed: return "closed";
    }
    return "boundary";
}

bool BranchLine::terminates_at_any(std::span<const DegeneracyPoint> points, DegeneracyKind kind) const {
    for (const auto& end : terminates_at) {
        if (!end) continue;
        for (const auto& p : points)
            if (p.id == *end && p.kind == kind) return true;
    }
    return false;
}

namespace {

// Re-centres a discriminant root on the nearest root of the Taylor expansion
// of the directly evaluated discriminant on a circle around it. A root of
// multiplicity m is taken as the simple root of the (m-1)th derivative.
Complex polish_root(const BivariatePoly& p, Complex z0, int multiplicity, double radius, std::size_t terms) {
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<Complex> values(terms);
        for (std::size_t j = 0; j < terms; ++j)
            values[j] = discriminant_value(p, z0 + std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                                                          static_cast<double>(terms)));
        std::vector<Complex> local(terms);
        for (std::size_t k = 0; k < terms; ++k) {
            Complex sum = 0.0;
            for (std::size_t j = 0; j < terms; ++j)
                sum += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % terms) /
                                                       static_cast<double>(terms));
            local[k] = sum / static_cast<double>(terms);
        }
        const ComplexPoly taylor = ComplexPoly(std::move(local)).trimmed(1e-12).derivative(multiplicity - 1);
        if (taylor.degree() < 1) return z0;
        const std::vector<RootCluster> roots = root_clusters(taylor);
        const auto nearest = std::min_element(roots.begin(), roots.end(), [](const RootCluster& a, const RootCluster& b) {
            return std::abs(a.value) < std::abs(b.value);
        });
        if (std::abs(nearest->value) > 0.5) return z0;
        z0 += radius * nearest->value;
        radius *= 1.0 / 16.0;
    }
    return z0;
}

}  // namespace

std::vector<DegeneracyPoint> discriminant_roots(const PolyMatrixFamily& f) {
    std::vector<DegeneracyPoint> out;
    if (f.size() < 2) return out;
    const ComplexPoly disc = discriminant_in_z(f);
    if (disc.degree() < 1) return out;
    std::vector<RootCluster> clusters = root_clusters(disc);

    const BivariatePoly p = char_poly_in_z(f);
    const std::size_t terms = std::clamp<std::size_t>(static_cast<std::size_t>(disc.degree()) + 1, 16, 128);
    for (auto& c : clusters) {
        double nearest = 0.1 * (1.0 + std::abs(c.value));
        for (const auto& o : clusters)
            if (&o != &c) nearest = std::min(nearest, std::abs(o.value - c.value));
        c.value = polish_root(p, c.value, c.multiplicity, 0.25 * nearest, terms);
    }
    std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    for (const auto& c : clusters) {
        DegeneracyPoint pt;
        pt.z0 = c.value;
        pt.multiplicity = c.multiplicity;
        out.push_back(pt);
    }
    return out;
}

std::vector<DegeneracyPoint> locate_degeneracies(const PolyMatrixFamily& f, const Region& region) {
    std::vector<DegeneracyPoint> out;
    const double slack = 1e-9 * region.diagonal();
    for (auto& p : discriminant_roots(f)) {
        if (!region.contains(p.z0, slack)) continue;
        p.id = static_cast<int>(out.size()) + 1;
        out.push_back(p);
    }
    return out;
}

namespace {

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

double classification_radius(Complex z0, std::span<const Complex> others, const Region& region) {
    const double cap = 1e-2 * region.diagonal();
    double nearest = std::numeric_limits<double>::infinity();
    for (Complex o : others)
        if (!same_point(o, z0)) nearest = std::min(nearest, std::abs(o - z0));
    return std::min(cap, 0.5 * nearest);
}

bool jordan_defective(const PolyMatrixFamily& f, Complex z0, double rel_tol) {
    const ComplexMatrix h = f.evaluate(z0);
    const std::vector<Complex> eigs = eigenvalues(h);
    const std::size_t n = eigs.size();
    if (n < 2) return false;
    std::size_t a = 0, b = 1;
    double best = std::abs(eigs[0] - eigs[1]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(eigs[i] - eigs[j]) < best) {
                best = std::abs(eigs[i] - eigs[j]);
                a = i;
                b = j;
            }
    const Complex lambda = 0.5 * (eigs[a] + eigs[b]);
    // Cluster: everything about as close to lambda as the pair itself.
    const double radius = std::max(4.0 * best, 1e-6 * std::max(1.0, h.frobenius_norm()));
    std::size_t algebraic = 0;
    for (Complex e : eigs)
        if (std::abs(e - lambda) <= radius) ++algebraic;
    ComplexMatrix shifted = h;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    const std::size_t geometric = n - numerical_rank(shifted, rel_tol);
    return geometric < algebraic;
}

DegeneracyPoint classify_degeneracy(const PolyMatrixFamily& f, const DegeneracyPoint& point, SortCriterion c,
                                    double r, std::span<const Complex> others, double eig_tol) {
    if (!(r > 0.0)) throw InvalidInput("classification radius must be positive");
    for (Complex o : others) {
        if (same_point(o, point.z0)) continue;
        if (std::abs(o - point.z0) < 2.0 * r) {
            throw RadiusTooLarge("classification circle of radius " + format_complex(r) + " around " +
                                 format_complex(point.z0, 12) + " comes within 2r of the degeneracy at " +
                                 format_complex(o, 12));
        }
    }
    DegeneracyPoint out = point;
    out.radius = r;
    out.local_monodromy = holonomy_by_tracking(f, circle_loop(point.z0, r), c, eig_tol);
    out.kind = out.local_monodromy.is_identity() ? DegeneracyKind::NonDefectiveCrossing
                                                 : DegeneracyKind::ExceptionalPoint;
    out.gap_residual = min_pairwise_gap(eigenvalues(f.evaluate(point.z0), eig_tol));
    out.defective = jordan_defective(f, point.z0);
    return out;
}

std::vector<DegeneracyPoint> classify_degeneracies(const PolyMatrixFamily& f, const Region& region, SortCriterion c,
                                                   double eig_tol) {
    std::vector<Complex> all;
    for (const auto& p : discriminant_roots(f)) all.push_back(p.z0);
    std::vector<DegeneracyPoint> points = locate_degeneracies(f, region);
    for (auto& p : points) p = classify_degeneracy(f, p, c, classification_radius(p.z0, all, region), all, eig_tol);
    return points;
}

namespace {

struct EdgeRef {
    int j;
    int k;
    EdgeAxis axis;
};

constexpr int kCrossingBisections = 36;

Complex refine_edge_crossing(const PolyMatrixFamily& f, const SheetGrid& grid, const EdgeRef& e, Complex za,
                             Complex zb, const Permutation& p, double eig_tol, bool& compound) {
    Complex lo = za;
    Complex hi = zb;
    std::vector<Complex> eig_lo(grid.canonical(e.j, e.k).begin(), grid.canonical(e.j, e.k).end());
    Permutation sort_lo = grid.sort_permutation(e.j, e.k);
    for (int it = 0; it < kCrossingBisections; ++it) {
        const Complex m = 0.5 * (lo + hi);
        const std::vector<Complex> eig_m = eigenvalues(f.evaluate(m), eig_tol);
        const Permutation sort_m = sort_sheets(eig_m, grid.criterion()).from_input;
        Permutation q;
        try {
            q = slot_transition(sort_lo, track_segment(f, lo, eig_lo, m, eig_m, eig_tol), sort_m);
        } catch (const MatchingAmbiguous&) {
            compound = true;
            break;
        }
        if (q.is_identity()) {
            lo = m;
            eig_lo = eig_m;
            sort_lo = sort_m;
        } else if (q == p) {
            hi = m;
        } else {
            // More than one jump on this edge; keep the current bracket.
            compound = true;
            break;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

EdgeSet detect_branch_edges(const SheetGrid& grid, const PolyMatrixFamily& f, double eig_tol) {
    EdgeSet out;
    out.region = grid.region();
    out.n_re = grid.n_re();
    out.n_im = grid.n_im();
    out.cell_diameter = grid.cell_diameter();
    out.cell_size = std::max(grid.step_re(), grid.step_im());

    std::vector<EdgeRef> refs;
    for (int k = 0; k < grid.n_im(); ++k)
        for (int j = 0; j < grid.n_re(); ++j) {
            if (j + 1 < grid.n_re()) refs.push_back({j, k, EdgeAxis::Re});
            if (k + 1 < grid.n_im()) refs.push_back({j, k, EdgeAxis::Im});
        }

    // A node sitting on a degeneracy has no continuity map to its neighbours;
    // its edges are left unflagged and nearby line ends reach it by extension.
    // The same holds for an edge passing through a degeneracy.
    auto on_degeneracy = [&](int j, int k) {
        const auto v = grid.canonical(j, k);
        double scale = 1.0;
        for (Complex x : v) scale = std::max(scale, std::abs(x));
        return v.size() > 1 && min_pairwise_gap(v) <= 1e-6 * scale;
    };

    std::vector<std::optional<FlaggedEdge>> found(refs.size());
    parallel_for(refs.size(), [&](std::size_t i) {
        const EdgeRef& e = refs[i];
        const int jb = e.axis == EdgeAxis::Re ? e.j + 1 : e.j;
        const int kb = e.axis == EdgeAxis::Re ? e.k : e.k + 1;
        if (on_degeneracy(e.j, e.k) || on_degeneracy(jb, kb)) return;
        const Complex za = grid.node(e.j, e.k);
        const Complex zb = grid.node(jb, kb);
        std::vector<int> map;
        try {
            map = track_segment(f, za, grid.canonical(e.j, e.k), zb, grid.canonical(jb, kb), eig_tol);
        } catch (const MatchingAmbiguous&) {
            return;
        }
        Permutation p = slot_transition(grid.sort_permutation(e.j, e.k), map, grid.sort_permutation(jb, kb));
        if (p.is_identity()) return;
        FlaggedEdge fe;
        fe.j = e.j;
        fe.k = e.k;
        fe.axis = e.axis;
        fe.za = za;
        fe.zb = zb;
        fe.crossing = refine_edge_crossing(f, grid, e, za, zb, p, eig_tol, fe.compound);
        fe.permutation = std::move(p);
        found[i] = std::move(fe);
    });
    for (auto& fe : found)
        if (fe) out.edges.push_back(std::move(*fe));
    return out;
}

namespace {

// Cell-adjacency bookkeeping for trace_branch_lines. Side 0 of an edge is the
// cell below (Re edge) or to the left (Im edge); side 1 is above or right.
class EdgeGraph {
public:
    explicit EdgeGraph(const EdgeSet& set) : set_(set), links_(set.edges.size(), {-1, -1}) {
        re_index_.assign(static_cast<std::size_t>(set.n_re) * static_cast<std::size_t>(set.n_im), -1);
        im_index_.assign(re_index_.size(), -1);
        for (std::size_t i = 0; i < set.edges.size(); ++i) {
            const auto& e = set.edges[i];
            (e.axis == EdgeAxis::Re ? re_index_ : im_index_)[node(e.j, e.k)] = static_cast<int>(i);
        }
        for (int ck = 0; ck + 1 < set.n_im; ++ck)
            for (int cj = 0; cj + 1 < set.n_re; ++cj) link_cell(cj, ck);
    }

    int link(int e, int side) const { return links_[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)]; }

    bool has_cell(int e, int side) const {
        const auto& fe = set_.edges[static_cast<std::size_t>(e)];
        if (fe.axis == EdgeAxis::Re) return side == 0 ? fe.k >= 1 : fe.k + 1 < set_.n_im;
        return side == 0 ? fe.j >= 1 : fe.j + 1 < set_.n_re;
    }

    Complex cell_center(int e, int side) const {
        const auto& fe = set_.edges[static_cast<std::size_t>(e)];
        const double dre = (set_.region.re_max - set_.region.re_min) / (set_.n_re - 1);
        const double dim = (set_.region.im_max - set_.region.im_min) / (set_.n_im - 1);
        const Complex mid = 0.5 * (fe.za + fe.zb);
        if (fe.axis == EdgeAxis::Re) return mid + Complex{0.0, (side == 0 ? -0.5 : 0.5) * dim};
        return mid + Complex{(side == 0 ? -0.5 : 0.5) * dre, 0.0};
    }

private:
    std::size_t node(int j, int k) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(set_.n_re) + static_cast<std::size_t>(j);
    }

    static std::vector<int> class_key(const Permutation& p) {
        return std::min(p.images(), p.inverse().images());
    }

    void connect(int a, int side_a, int b, int side_b) {
        links_[static_cast<std::size_t>(a)][static_cast<std::size_t>(side_a)] = b;
        links_[static_cast<std::size_t>(b)][static_cast<std::size_t>(side_b)] = a;
    }

    void link_cell(int cj, int ck) {
        // Counter-clockwise: bottom, right, top, left.
        const int ids[4] = {re_index_[node(cj, ck)], im_index_[node(cj + 1, ck)], re_index_[node(cj, ck + 1)],
                            im_index_[node(cj, ck)]};
        // This cell is side 1 of its bottom and left edges, side 0 of the others.
        constexpr int sides[4] = {1, 0, 0, 1};
        std::map<std::vector<int>, std::vector<int>> groups;
        for (int pos = 0; pos < 4; ++pos)
            if (ids[pos] >= 0) groups[class_key(set_.edges[static_cast<std::size_t>(ids[pos])].permutation)].push_back(pos);

        auto crossing = [&](int pos) { return set_.edges[static_cast<std::size_t>(ids[pos])].crossing; };
        auto join = [&](int p, int q) { connect(ids[p], sides[p], ids[q], sides[q]); };

        for (const auto& [key, pos] : groups) {
            if (pos.size() == 2) {
                join(pos[0], pos[1]);
            } else if (pos.size() == 3) {
                // One line passes straight through; the third edge ends here.
                for (std::size_t a = 0; a < 3; ++a)
                    for (std::size_t b = a + 1; b < 3; ++b)
                        if (pos[b] - pos[a] == 2) join(pos[a], pos[b]);
            } else if (pos.size() == 4) {
                // Saddle: pair adjacent sides, choosing the shorter pairing.
                const double d01 = std::abs(crossing(0) - crossing(1)) + std::abs(crossing(2) - crossing(3));
                const double d03 = std::abs(crossing(0) - crossing(3)) + std::abs(crossing(1) - crossing(2));
                if (d01 <= d03) {
                    join(0, 1);
                    join(2, 3);
                } else {
                    join(0, 3);
                    join(1, 2);
                }
            }
        }
    }

    const EdgeSet& set_;
    std::vector<std::array<int, 2>> links_;
    std::vector<int> re_index_;
    std::vector<int> im_index_;
};

struct Chain {
    std::vector<int> edges;
    bool closed = false;
    // Free side of the first and last edge (meaningful when open).
    int head_side = 0;
    int tail_side = 1;
};

// Follows links from `start` leaving through `side`. Returns the edges after
// start; sets `free_side` to the unlinked side of the last edge.
std::vector<int> walk(const EdgeGraph& g, int start, int side, bool& cycled, int& free_side) {
    std::vector<int> seq;
    int prev = start;
    int s = side;
    cycled = false;
    while (true) {
        const int next = g.link(prev, s);
        if (next < 0) {
            free_side = s;
            break;
        }
        if (next == start) {
            cycled = true;
            break;
        }
        seq.push_back(next);
        const int back = g.link(next, 0) == prev ? 0 : 1;
        s = 1 - back;
        prev = next;
    }
    return seq;
}

Chain build_chain(const EdgeGraph& g, int start) {
    Chain c;
    bool cycled = false;
    int free0 = 0;
    std::vector<int> before = walk(g, start, 0, cycled, free0);
    if (cycled) {
        c.closed = true;
        c.edges.push_back(start);
        c.edges.insert(c.edges.end(), before.begin(), before.end());
        return c;
    }
    int free1 = 1;
    std::vector<int> after = walk(g, start, 1, cycled, free1);
    c.edges.assign(before.rbegin(), before.rend());
    c.edges.push_back(start);
    c.edges.insert(c.edges.end(), after.begin(), after.end());
    c.head_side = before.empty() ? 0 : free0;
    c.tail_side = after.empty() ? 1 : free1;
    if (c.edges.back() < c.edges.front()) {
        std::reverse(c.edges.begin(), c.edges.end());
        std::swap(c.head_side, c.tail_side);
    }
    return c;
}

Complex unit(Complex z) {
    const double a = std::abs(z);
    return a > 0.0 ? z / a : Complex{1.0, 0.0};
}

// Unit normals from central-difference tangents rotated by -i.
std::vector<Complex> vertex_normals(const std::vector<Complex>& pts, bool closed, Complex fallback) {
    const std::size_t m = pts.size();
    std::vector<Complex> normals(m);
    if (m == 1) {
        normals[0] = unit(fallback);
        return normals;
    }
    for (std::size_t i = 0; i < m; ++i) {
        Complex tangent;
        if (closed) {
            tangent = pts[(i + 1) % m] - pts[(i + m - 1) % m];
        } else if (i == 0) {
            tangent = pts[1] - pts[0];
        } else if (i + 1 == m) {
            tangent = pts[m - 1] - pts[m - 2];
        } else {
            tangent = pts[i + 1] - pts[i - 1];
        }
        normals[i] = unit(tangent * Complex{0.0, -1.0});
    }
    return normals;
}

struct Piece {
    std::vector<int> edges;
    std::vector<Permutation> oriented;
    bool closed = false;
    bool head_free = false;  // head is a chain end (not a split point)
    bool tail_free = false;
    int head_side = 0;
    int tail_side = 1;
};

}  // namespace

std::vector<BranchLine> trace_branch_lines(const EdgeSet& set, std::span<const DegeneracyPoint> degeneracies) {
    const EdgeGraph g(set);
    std::vector<char> visited(set.edges.size(), 0);
    std::vector<Piece> pieces;

    for (std::size_t s = 0; s < set.edges.size(); ++s) {
        if (visited[s]) continue;
        const Chain chain = build_chain(g, static_cast<int>(s));
        for (int e : chain.edges) visited[static_cast<std::size_t>(e)] = 1;

        std::vector<Complex> pts;
        for (int e : chain.edges) pts.push_back(set.edges[static_cast<std::size_t>(e)].crossing);
        const auto& first = set.edges[static_cast<std::size_t>(chain.edges.front())];
        const std::vector<Complex> normals = vertex_normals(pts, chain.closed, first.zb - first.za);

        std::vector<Permutation> oriented;
        for (std::size_t i = 0; i < chain.edges.size(); ++i) {
            const auto& fe = set.edges[static_cast<std::size_t>(chain.edges[i])];
            const Complex dir = fe.zb - fe.za;
            const double dot = dir.real() * normals[i].real() + dir.imag() * normals[i].imag();
            oriented.push_back(dot >= 0.0 ? fe.permutation : fe.permutation.inverse());
        }

        // Split wherever the oriented permutation changes.
        std::vector<std::size_t> cuts{0};
        for (std::size_t i = 1; i < oriented.size(); ++i)
            if (!(oriented[i] == oriented[i - 1])) cuts.push_back(i);
        cuts.push_back(oriented.size());

        if (chain.closed && cuts.size() == 2) {
            Piece p;
            p.edges = chain.edges;
            p.oriented = oriented;
            p.closed = true;
            pieces.push_back(std::move(p));
            continue;
        }
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            Piece p;
            p.edges.assign(chain.edges.begin() + static_cast<long>(cuts[c]),
                           chain.edges.begin() + static_cast<long>(cuts[c + 1]));
            p.oriented.assign(oriented.begin() + static_cast<long>(cuts[c]),
                              oriented.begin() + static_cast<long>(cuts[c + 1]));
            p.head_free = !chain.closed && c == 0;
            p.tail_free = !chain.closed && c + 2 == cuts.size();
            p.head_side = chain.head_side;
            p.tail_side = chain.tail_side;
            pieces.push_back(std::move(p));
        }
    }

    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        return *std::min_element(a.edges.begin(), a.edges.end()) < *std::min_element(b.edges.begin(), b.edges.end());
    });

    std::vector<BranchLine> lines;
    for (const Piece& p : pieces) {
        BranchLine line;
        line.id = static_cast<int>(lines.size()) + 1;
        line.label = "M" + std::to_string(line.id);
        line.closed = p.closed;
        for (int e : p.edges) {
            line.polyline.push_back(set.edges[static_cast<std::size_t>(e)].crossing);
            line.source_edges.push_back(e);
        }

        if (p.closed) {
            line.end_kind = {LineEnd::Closed, LineEnd::Closed};
        } else {
            // Resolve each end: degeneracy within a cell diameter, region
            // boundary, or a junction at the end cell.
            auto resolve = [&](int edge, int side, bool free, std::size_t which) -> std::optional<Complex> {
                if (!free) {
                    line.end_kind[which] = LineEnd::Junction;
                    return std::nullopt;
                }
                const Complex at = set.edges[static_cast<std::size_t>(edge)].crossing;
                const DegeneracyPoint* nearest = nullptr;
                double best = std::numeric_limits<double>::infinity();
                for (const auto& d : degeneracies) {
                    const double dist = std::abs(d.z0 - at);
                    if (dist <= set.cell_diameter && dist < best) {
                        best = dist;
                        nearest = &d;
                    }
                }
                if (nearest) {
                    line.end_kind[which] = LineEnd::Degeneracy;
                    line.terminates_at[which] = nearest->id;
                    return nearest->z0;
                }
                if (!g.has_cell(edge, side)) {
                    line.end_kind[which] = LineEnd::Boundary;
                    return std::nullopt;
                }
                line.end_kind[which] = LineEnd::Junction;
                return g.cell_center(edge, side);
            };
            const std::optional<Complex> head = resolve(p.edges.front(), p.head_side, p.head_free, 0);
            const std::optional<Complex> tail = resolve(p.edges.back(), p.tail_side, p.tail_free, 1);
            if (head) {
                line.polyline.insert(line.polyline.begin(), *head);
                line.source_edges.insert(line.source_edges.begin(), -1);
            }
            if (tail) {
                line.polyline.push_back(*tail);
                line.source_edges.push_back(-1);
            }
        }

        const auto& first = set.edges[static_cast<std::size_t>(p.edges.front())];
        line.normals = vertex_normals(line.polyline, line.closed, first.zb - first.za);
        // Orient the permutation against the final normals at a middle crossing.
        std::size_t mid = 0;
        {
            std::vector<std::size_t> src;
            for (std::size_t i = 0; i < line.source_edges.size(); ++i)
                if (line.source_edges[i] >= 0) src.push_back(i);
            mid = src[src.size() / 2];
        }
        const auto& fe = set.edges[static_cast<std::size_t>(line.source_edges[mid])];
        const Complex dir = fe.zb - fe.za;
        const double dot = dir.real() * line.normals[mid].real() + dir.imag() * line.normals[mid].imag();
        line.permutation = dot >= 0.0 ? fe.permutation : fe.permutation.inverse();
        lines.push_back(std::move(line));
    }
    return lines;
}

double default_side_step(const EdgeSet& edges) { return 1e-3 * edges.cell_size; }

Permutation crossing_permutation(const PolyMatrixFamily& f, Complex point, Complex normal, SortCriterion c, double h,
                                 double eig_tol) {
    const Complex n = unit(normal);
    for (int attempt = 0;; ++attempt) {
        try {
            return slot_permutation_along(f, point - h * n, point + h * n, c, eig_tol);
        } catch (const MatchingAmbiguous&) {
            if (attempt >= 10) throw;
            h *= 0.5;
        }
    }
}

}  // namespace epwind
