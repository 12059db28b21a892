#include "epwind/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epwind {
namespace {

using CostMatrix = std::vector<std::vector<double>>;

// Hungarian algorithm (shortest augmenting paths with potentials), O(n^3).
std::vector<int> hungarian(const CostMatrix& cost) {
    const int n = static_cast<int>(cost.size());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = kInf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> target(n);
    for (int j = 1; j <= n; ++j) target[p[j] - 1] = j - 1;
    return target;
}

double total(const CostMatrix& cost, const std::vector<int>& t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += cost[i][static_cast<std::size_t>(t[i])];
    return s;
}

}  // namespace

Assignment match_min_distance(std::span<const std::complex<double>> from,
                              std::span<const std::complex<double>> to) {
    if (from.size() != to.size()) throw std::invalid_argument("match_min_distance: size mismatch");
    const std::size_t n = from.size();
    Assignment out;
    if (n == 0) return out;
    CostMatrix cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(from[i] - to[j]);

    if (n == 1) {
        out.target = {0};
        out.cost = cost[0][0];
        return out;
    }

    if (n <= 5) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        double second = best;
        do {
            const double c = total(cost, perm);
            if (c < best) {
                second = best;
                best = c;
                out.target = perm;
            } else if (c < second) {
                second = c;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.cost = best;
        out.runner_up_cost = second;
        return out;
    }

    out.target = hungarian(cost);
    out.cost = total(cost, out.target);
    // The runner-up avoids at least one edge of the optimum.
    double big = 1.0;
    for (const auto& row : cost)
        for (double c : row) big = std::max(big, c);
    big *= 4.0 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        CostMatrix banned = cost;
        banned[i][static_cast<std::size_t>(out.target[i])] = big;
        const std::vector<int> alt = hungarian(banned);
        out.runner_up_cost = std::min(out.runner_up_cost, total(cost, alt));
    }
    return out;
}

}  // namespace epwind
