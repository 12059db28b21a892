#pragma once

#include <vector>

#include "epwind/branch.hpp"
#include "epwind/config.hpp"
#include "epwind/family.hpp"
#include "epwind/holonomy.hpp"
#include "epwind/sheets.hpp"

namespace epwind {

struct AnalysisResult {
    PolyMatrixFamily family;
    SheetGrid grid;
    std::vector<DegeneracyPoint> degeneracies;
    EdgeSet edges;
    std::vector<BranchLine> lines;
    /// crossing_permutation at the middle crossing of each line, against its normal.
    std::vector<Permutation> side_tests;
    /// Grid gap minima below 4*sqrt(cell diameter), a coarse cross-check.
    std::vector<Complex> gap_minima;
};

/// Grid sampling, degeneracy census, edge detection and line tracing.
AnalysisResult analyze(const PolyMatrixFamily& f, const Region& region, int n_re, int n_im, SortCriterion c,
                       const Tolerances& tol = {});

AnalysisResult analyze(const AnalysisConfig& cfg);

/// Index of the polyline vertex used for side tests: the middle edge crossing.
std::size_t middle_crossing(const BranchLine& line);

std::vector<HolonomyReport> run_loops(const AnalysisResult& analysis, const AnalysisConfig& cfg,
                                      const std::vector<std::size_t>& which);

}  // namespace epwind
