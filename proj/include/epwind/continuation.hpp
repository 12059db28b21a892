#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "epwind/family.hpp"
#include "epwind/linalg.hpp"
#include "epwind/permutation.hpp"
#include "epwind/sheets.hpp"

namespace epwind {

/// Bisection depth limit for segment matching.
inline constexpr int kMaxMatchDepth = 40;

/// Continuity matching between two nearby spectra.
///
/// Accepted only if the best total displacement is at most half the
/// runner-up and every eigenvalue moves less than half the distance to its
/// nearest neighbour in `from`. Returns target indices into `to`.
std::optional<std::vector<int>> match_step(std::span<const Complex> from, std::span<const Complex> to);

/// Continuity map from the canonical spectrum at za to the one at zb along the
/// straight segment, bisecting until every sub-step matches unambiguously.
/// Throws MatchingAmbiguous at depth 40.
std::vector<int> track_segment(const PolyMatrixFamily& f, Complex za, std::span<const Complex> eig_a, Complex zb,
                               std::span<const Complex> eig_b, double eig_tol = kDefaultEigenTol);

/// Slot-to-slot permutation given sort permutations at both ends and a
/// canonical continuity map between them.
Permutation slot_transition(const Permutation& sort_a, const std::vector<int>& continuity, const Permutation& sort_b);

/// Slot permutation accumulated along the straight segment za -> zb.
Permutation slot_permutation_along(const PolyMatrixFamily& f, Complex za, Complex zb, SortCriterion c,
                                   double eig_tol = kDefaultEigenTol);

}  // namespace epwind
