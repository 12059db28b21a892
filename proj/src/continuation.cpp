#include "epwind/continuation.hpp"

#include <cmath>
#include <limits>

#include "epwind/assignment.hpp"
#include "epwind/error.hpp"

namespace epwind {

std::optional<std::vector<int>> match_step(std::span<const Complex> from, std::span<const Complex> to) {
    Assignment a = match_min_distance(from, to);
    if (!(a.cost <= 0.5 * a.runner_up_cost)) return std::nullopt;
    for (std::size_t i = 0; i < from.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < from.size(); ++j)
            if (j != i) nearest = std::min(nearest, std::abs(from[i] - from[j]));
        if (!(std::abs(from[i] - to[static_cast<std::size_t>(a.target[i])]) <= 0.5 * nearest)) return std::nullopt;
    }
    return std::move(a.target);
}

namespace {

std::vector<int> track_recursive(const PolyMatrixFamily& f, Complex za, std::span<const Complex> eig_a, Complex zb,
                                 std::span<const Complex> eig_b, double eig_tol, int depth) {
    if (auto m = match_step(eig_a, eig_b)) return std::move(*m);
    if (depth >= kMaxMatchDepth) {
        throw MatchingAmbiguous("continuity matching stayed ambiguous after " + std::to_string(kMaxMatchDepth) +
                                " bisections between z = " + format_complex(za, 12) + " and z = " +
                                format_complex(zb, 12) + " (path passes through a degeneracy)");
    }
    const Complex zm = 0.5 * (za + zb);
    const std::vector<Complex> eig_m = eigenvalues(f.evaluate(zm), eig_tol);
    const std::vector<int> first = track_recursive(f, za, eig_a, zm, eig_m, eig_tol, depth + 1);
    const std::vector<int> second = track_recursive(f, zm, eig_m, zb, eig_b, eig_tol, depth + 1);
    std::vector<int> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[static_cast<std::size_t>(first[i])];
    return out;
}

}  // namespace

std::vector<int> track_segment(const PolyMatrixFamily& f, Complex za, std::span<const Complex> eig_a, Complex zb,
                               std::span<const Complex> eig_b, double eig_tol) {
    return track_recursive(f, za, eig_a, zb, eig_b, eig_tol, 0);
}

Permutation slot_transition(const Permutation& sort_a, const std::vector<int>& continuity, const Permutation& sort_b) {
    const Permutation inv_a = sort_a.inverse();
    std::vector<int> images(sort_a.size());
    for (std::size_t slot = 0; slot < images.size(); ++slot) {
        const auto canon_a = static_cast<std::size_t>(inv_a(slot));
        images[slot] = sort_b(static_cast<std::size_t>(continuity[canon_a]));
    }
    return Permutation(std::move(images));
}

Permutation slot_permutation_along(const PolyMatrixFamily& f, Complex za, Complex zb, SortCriterion c, double eig_tol) {
    const std::vector<Complex> ea = eigenvalues(f.evaluate(za), eig_tol);
    const std::vector<Complex> eb = eigenvalues(f.evaluate(zb), eig_tol);
    const std::vector<int> map = track_segment(f, za, ea, zb, eb, eig_tol);
    return slot_transition(sort_sheets(ea, c).from_input, map, sort_sheets(eb, c).from_input);
}

}  // namespace epwind
