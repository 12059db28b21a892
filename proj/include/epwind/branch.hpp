#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epwind/family.hpp"
#include "epwind/permutation.hpp"
#include "epwind/sheets.hpp"

namespace epwind {

enum class DegeneracyKind { Unclassified, ExceptionalPoint, NonDefectiveCrossing };

std::string to_string(DegeneracyKind kind);

struct DegeneracyPoint {
    int id = 0;
    Complex z0;
    /// Multiplicity of z0 as a discriminant root.
    int multiplicity = 1;
    DegeneracyKind kind = DegeneracyKind::Unclassified;
    /// min_pairwise_gap of the spectrum at z0.
    double gap_residual = 0.0;
    /// Slot permutation around a small circle based at z0 + radius.
    Permutation local_monodromy;
    double radius = 0.0;
    /// Independent rank test at z0: geometric multiplicity below algebraic.
    bool defective = false;
};

/// Every discriminant root (in or out of any region), polished.
std::vector<DegeneracyPoint> discriminant_roots(const PolyMatrixFamily& f);

/// Discriminant roots inside the closed region (boundary included), unclassified.
std::vector<DegeneracyPoint> locate_degeneracies(const PolyMatrixFamily& f, const Region& region);

/// Half the distance to the nearest other degeneracy, capped at 1% of the region diagonal.
double classification_radius(Complex z0, std::span<const Complex> others, const Region& region);

/// Classifies by tracking the spectrum around |z - z0| = r. Throws
/// RadiusTooLarge if some other degeneracy lies strictly within 2r.
DegeneracyPoint classify_degeneracy(const PolyMatrixFamily& f, const DegeneracyPoint& point, SortCriterion c,
                                    double r, std::span<const Complex> others, double eig_tol = kDefaultEigenTol);

/// Jordan test at the closest eigenvalue pair of H(z0): true when
/// rank(H - lambda I) exceeds n minus the size of the coalescing cluster.
bool jordan_defective(const PolyMatrixFamily& f, Complex z0, double rel_tol = 1e-6);

/// locate_degeneracies followed by classification at the default radius.
std::vector<DegeneracyPoint> classify_degeneracies(const PolyMatrixFamily& f, const Region& region,
                                                   SortCriterion c, double eig_tol = kDefaultEigenTol);

enum class EdgeAxis { Re, Im };

/// Lattice edge across which the sorted slot assignment jumps.
struct FlaggedEdge {
    int j = 0;
    int k = 0;
    /// Re: (j,k) -> (j+1,k). Im: (j,k) -> (j,k+1).
    EdgeAxis axis = EdgeAxis::Re;
    Complex za;
    Complex zb;
    /// Slot i at za continues into slot permutation(i) at zb.
    Permutation permutation;
    /// Location of the slot jump on the edge, refined by bisection.
    Complex crossing;
    /// Set when bisection met more than one jump: several cuts cross this
    /// edge and `crossing` is only the midpoint of the last bracket.
    bool compound = false;
};

struct EdgeSet {
    Region region;
    int n_re = 0;
    int n_im = 0;
    double cell_diameter = 0.0;
    double cell_size = 0.0;
    /// Row-major scan order: for each k, for each j, the Re edge then the Im edge.
    std::vector<FlaggedEdge> edges;
};

/// Continuity-matches every lattice edge and keeps those whose slot
/// permutation is non-identity. Edges with an endpoint on a degeneracy
/// (spectral gap <= 1e-6 relative) are skipped.
EdgeSet detect_branch_edges(const SheetGrid& grid, const PolyMatrixFamily& f, double eig_tol = kDefaultEigenTol);

enum class LineEnd { Degeneracy, Boundary, Junction, Closed };

std::string to_string(LineEnd end);

struct BranchLine {
    int id = 0;
    /// "M1", "M2", ... in discovery order.
    std::string label;
    std::vector<Complex> polyline;
    /// Unit normals pointing from side A to side B, one per vertex.
    std::vector<Complex> normals;
    /// Flagged-edge index behind each vertex; -1 for end extensions.
    std::vector<int> source_edges;
    /// Side-A slot i continues into side-B slot permutation(i).
    Permutation permutation;
    bool closed = false;
    std::array<LineEnd, 2> end_kind{LineEnd::Boundary, LineEnd::Boundary};
    /// Degeneracy ids at the start and end of the polyline.
    std::array<std::optional<int>, 2> terminates_at;

    bool terminates_at_any(std::span<const DegeneracyPoint> points, DegeneracyKind kind) const;
};

/// Chains flagged edges into maximal polylines of constant permutation.
std::vector<BranchLine> trace_branch_lines(const EdgeSet& edges, std::span<const DegeneracyPoint> degeneracies);

/// Default side-sampling distance: 1e-3 of a grid cell.
double default_side_step(const EdgeSet& edges);

/// Permutation carrying slots on the -normal side of `point` to the +normal
/// side. Retries with h halved up to 10 times on MatchingAmbiguous.
Permutation crossing_permutation(const PolyMatrixFamily& f, Complex point, Complex normal, SortCriterion c, double h,
                                 double eig_tol = kDefaultEigenTol);

}  // namespace epwind
