#include "epwind/analysis.hpp"

#include <cmath>

#include "epwind/error.hpp"

namespace epwind {

std::size_t middle_crossing(const BranchLine& line) {
    std::vector<std::size_t> src;
    for (std::size_t i = 0; i < line.source_edges.size(); ++i)
        if (line.source_edges[i] >= 0) src.push_back(i);
    return src.empty() ? line.polyline.size() / 2 : src[src.size() / 2];
}

AnalysisResult analyze(const PolyMatrixFamily& f, const Region& region, int n_re, int n_im, SortCriterion c,
                       const Tolerances& tol) {
    SheetGrid grid = sample_grid(f, region, n_re, n_im, c, tol.eigen);
    std::vector<DegeneracyPoint> degeneracies = classify_degeneracies(f, region, c, tol.eigen);
    EdgeSet edges = detect_branch_edges(grid, f, tol.eigen);
    std::vector<BranchLine> lines = trace_branch_lines(edges, degeneracies);

    std::vector<Permutation> side_tests;
    const double h = tol.side_step * edges.cell_size;
    for (const auto& line : lines) {
        const std::size_t m = middle_crossing(line);
        side_tests.push_back(crossing_permutation(f, line.polyline[m], line.normals[m], c, h, tol.eigen));
    }
    std::vector<Complex> minima = scan_gap_minima(grid, 4.0 * std::sqrt(grid.cell_diameter()));
    return AnalysisResult{f,
                          std::move(grid),
                          std::move(degeneracies),
                          std::move(edges),
                          std::move(lines),
                          std::move(side_tests),
                          std::move(minima)};
}

AnalysisResult analyze(const AnalysisConfig& cfg) {
    return analyze(parse_family(cfg.family_text), cfg.region, cfg.n_re, cfg.n_im, cfg.criterion, cfg.tolerances);
}

std::vector<HolonomyReport> run_loops(const AnalysisResult& analysis, const AnalysisConfig& cfg,
                                      const std::vector<std::size_t>& which) {
    std::vector<HolonomyReport> out;
    for (std::size_t i : which) {
        if (i >= cfg.loops.size()) {
            throw ConfigError("loop index " + std::to_string(i) + " out of range (config has " +
                              std::to_string(cfg.loops.size()) + " loops)");
        }
        out.push_back(verify_holonomy(analysis.family, cfg.loops[i], analysis.lines, cfg.criterion,
                                      analysis.degeneracies, cfg.tolerances.eigen));
    }
    return out;
}

}  // namespace epwind
