#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "epwind/branch.hpp"
#include "epwind/family.hpp"
#include "epwind/permutation.hpp"
#include "epwind/sheets.hpp"

namespace epwind {

/// Closed polygon; the last vertex connects back to the first.
class LoopPath {
public:
    static constexpr double kLineClearance = 1e-6;
    static constexpr double kDegeneracyClearance = 1e-3;

    /// Throws InvalidInput for fewer than 3 vertices, repeated consecutive
    /// vertices or non-finite coordinates.
    explicit LoopPath(std::vector<Complex> vertices);

    const std::vector<Complex>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    Complex basepoint() const { return vertices_.front(); }
    /// Segment i runs from vertex i to vertex (i+1) mod size.
    Complex segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
    double perimeter() const;

private:
    std::vector<Complex> vertices_;
};

/// Circle polygonized at `vertices` points, starting at center + r*e^{i*start_angle}.
LoopPath circle_loop(Complex center, double radius, double start_angle = 0.0, bool clockwise = false,
                     int vertices = 256);

/// Same basepoint, opposite orientation.
LoopPath reversed(const LoopPath& loop);

/// a followed by b; both must share the basepoint.
LoopPath concatenated(const LoopPath& a, const LoopPath& b);

enum class CrossingDirection { AtoB, BtoA };

struct CrossingEvent {
    /// Arc-length fraction along the loop, in [0, 1).
    double t = 0.0;
    int line_id = 0;
    std::string label;
    CrossingDirection direction = CrossingDirection::AtoB;
    /// The line's permutation, inverted for B->A crossings.
    Permutation permutation;
    Complex point;
};

/// Optional bisection refinement of crossing positions by side tests.
struct CrossingRefinement {
    const PolyMatrixFamily* family = nullptr;
    SortCriterion criterion;
    double eig_tol = kDefaultEigenTol;
};

/// Throws NonGenericLoop when a vertex lies within 1e-6 of a branch line or
/// within 1e-3 of a degeneracy.
void validate_loop(const LoopPath& loop, std::span<const BranchLine> lines,
                   std::span<const DegeneracyPoint> degeneracies);

/// Transversal loop/line intersections ordered by t. Throws
/// DegenerateCrossing when the loop runs tangent to a line or two events
/// coincide.
std::vector<CrossingEvent> find_crossings(const LoopPath& loop, std::span<const BranchLine> lines,
                                          const CrossingRefinement* refine = nullptr);

/// P_k * ... * P_2 * P_1: later crossings act on the left.
Permutation holonomy_from_crossings(std::span<const CrossingEvent> events, std::size_t n);

/// Slot permutation after continuing the spectrum once around the loop.
/// Throws StepCollapse after 40 consecutive step halvings.
Permutation holonomy_by_tracking(const PolyMatrixFamily& f, const LoopPath& loop, SortCriterion c,
                                 double eig_tol = kDefaultEigenTol);

struct HolonomyReport {
    std::vector<CrossingEvent> events;
    Permutation product;
    Permutation oracle;
    bool agree = false;
    /// Slot values at the basepoint, slot 1 first.
    std::vector<Complex> basepoint_values;
    /// "s1 = <value>" style descriptions, one per slot.
    std::vector<std::string> slot_labels;
};

/// Runs both methods and compares. Errors are rethrown with a
/// "[crossings]" or "[tracking]" prefix.
HolonomyReport verify_holonomy(const PolyMatrixFamily& f, const LoopPath& loop, std::span<const BranchLine> lines,
                               SortCriterion c, std::span<const DegeneracyPoint> degeneracies = {},
                               double eig_tol = kDefaultEigenTol);

}  // namespace epwind
