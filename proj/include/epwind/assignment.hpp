#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace epwind {

struct Assignment {
    /// target[i] = index in the second list matched to element i of the first.
    std::vector<int> target;
    double cost = 0.0;
    /// Cheapest assignment differing from `target`; +inf when n == 1.
    double runner_up_cost = std::numeric_limits<double>::infinity();
};

/// Minimal total-distance bijection between two equally sized lists
/// (Hungarian algorithm), plus the cost of the second-best bijection.
Assignment match_min_distance(std::span<const std::complex<double>> from,
                              std::span<const std::complex<double>> to);

}  // namespace epwind
