#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "epwind/holonomy.hpp"
#include "epwind/linalg.hpp"
#include "epwind/sheets.hpp"

namespace epwind {

struct Tolerances {
    /// QR deflation tolerance.
    double eigen = kDefaultEigenTol;
    /// Side-sampling distance for crossing tests, as a fraction of the cell size.
    double side_step = 1e-3;
};

/// Parsed analysis config.
///
///     # comment
///     region     = -2 2 -2 2          (re_min re_max im_min im_max)
///     resolution = 128 128
///     criterion  = real               (real | imag | abs)
///     tol.eigen  = 1e-14
///     tol.side_step = 1e-3
///     loop   = 0.3 0.8; 0.15 1.05; -0.15 1.05
///     circle = 0 1 0.5 144 cw         (centre re, im, radius, start angle in degrees, cw|ccw)
///     ```family
///     [[1, z, 0], [z, -1, 0], [0, 0, 2*z]]
///     ```
///
/// Loops are numbered from 0 in the order their lines appear.
struct AnalysisConfig {
    std::string family_text;
    /// 1-based config line of the family text, for error positions.
    int family_line = 1;
    Region region;
    int n_re = 0;
    int n_im = 0;
    SortCriterion criterion;
    Tolerances tolerances;
    std::vector<LoopPath> loops;
};

/// Throws ConfigError with the offending line; family grammar errors are
/// reported as SyntaxError positioned within the config file.
AnalysisConfig parse_config(std::string_view text);

AnalysisConfig load_config(const std::filesystem::path& path);

}  // namespace epwind
