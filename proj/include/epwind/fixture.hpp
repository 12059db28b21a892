#pragma once

#include <array>
#include <string>
#include <vector>

#include "epwind/branch.hpp"
#include "epwind/family.hpp"
#include "epwind/holonomy.hpp"
#include "epwind/permutation.hpp"
#include "epwind/sheets.hpp"

namespace epwind::fixture {

/// H(z) = [[1, z, 0], [z, -1, 0], [0, 0, 2z]] with eigenvalues +-sqrt(1+z^2) and 2z.
inline constexpr const char* kFamilyText = "[[1, z, 0], [z, -1, 0], [0, 0, 2*z]]";

PolyMatrixFamily family();
Region region();
inline constexpr int kResolution = 128;

/// Config file text equivalent to the bundled fixture, with both loops.
std::string config_text();

/// Closed forms (+sqrt(1+z^2), -sqrt(1+z^2), 2z), principal square root.
std::array<Complex, 3> closed_form(Complex z);

/// Circle of radius 0.5 around z = i, clockwise from 144 degrees. Crosses the
/// upper imaginary-axis line, then the right and left halves of the ellipse.
LoopPath larger_loop();

/// Pentagon based at 0.3+0.8i around the upper exceptional point, inside the
/// ellipse; crosses only the upper imaginary-axis line.
LoopPath smaller_loop();

inline constexpr Complex kSmallBasepoint{0.3, 0.8};

/// Slot swaps of the three line families:
/// M1 = (1 3) on the imaginary axis, M2 = (2 3) on the left half of the
/// ellipse x^2 + y^2/4 = 1/3, M3 = (1 2) on the right half.
Permutation m1();
Permutation m2();
Permutation m3();

/// Maps a traced line onto the M1/M2/M3 naming by where it lies: the
/// imaginary axis, the left half-plane or the right half-plane.
std::string family_label(const BranchLine& line);

/// The matrix for a family label ("M1", "M2", "M3").
Permutation matrix_for(const std::string& family);

}  // namespace epwind::fixture
