#include "epwind/sheets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "epwind/error.hpp"
#include "epwind/parallel.hpp"

namespace epwind {

SortCriterion SortCriterion::parse(std::string_view token) {
    if (token == "real" || token == "RealPart" || token == "re") return {SortKey::RealPart};
    if (token == "imag" || token == "ImagPart" || token == "im") return {SortKey::ImagPart};
    if (token == "abs" || token == "Magnitude" || token == "magnitude") return {SortKey::Magnitude};
    throw ConfigError("unknown sort criterion '" + std::string(token) + "' (expected real, imag or abs)");
}

std::string SortCriterion::token() const {
    switch (key) {
        case SortKey::RealPart: return "real";
        case SortKey::ImagPart: return "imag";
        case SortKey::Magnitude: return "abs";
    }
    return "real";
}

namespace {

double phase(Complex v) {
    const double a = std::arg(v);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace

double SortCriterion::primary(Complex v) const {
    switch (key) {
        case SortKey::RealPart: return v.real();
        case SortKey::ImagPart: return v.imag();
        case SortKey::Magnitude: return std::abs(v);
    }
    return v.real();
}

double SortCriterion::secondary(Complex v) const {
    switch (key) {
        case SortKey::RealPart: return v.imag();
        case SortKey::ImagPart: return v.real();
        case SortKey::Magnitude: return phase(v);
    }
    return v.imag();
}

bool SortCriterion::before(Complex a, Complex b) const {
    const double pa = primary(a);
    const double pb = primary(b);
#ifdef EPWIND_FAULT_ASCENDING_SORT
    if (pa != pb) return pa < pb;
    return secondary(a) < secondary(b);
#else
    if (pa != pb) return pa > pb;
    return secondary(a) > secondary(b);
#endif
}

SortedSheets sort_sheets(std::span<const Complex> eigs, SortCriterion c) {
    std::vector<int> order(eigs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return c.before(eigs[static_cast<std::size_t>(a)], eigs[static_cast<std::size_t>(b)]);
    });
    SortedSheets out;
    out.values.resize(eigs.size());
    std::vector<int> slot_of(eigs.size());
    for (std::size_t s = 0; s < order.size(); ++s) {
        out.values[s] = eigs[static_cast<std::size_t>(order[s])];
        slot_of[static_cast<std::size_t>(order[s])] = static_cast<int>(s);
    }
    out.from_input = Permutation(std::move(slot_of));
    return out;
}

bool Region::contains(Complex z, double slack) const {
    return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
           z.imag() <= im_max + slack;
}

double Region::diagonal() const { return std::hypot(re_max - re_min, im_max - im_min); }

SheetGrid::SheetGrid(Region region, int n_re, int n_im, SortCriterion criterion, std::size_t dimension)
    : region_(region), n_re_(n_re), n_im_(n_im), criterion_(criterion), n_(dimension) {
    if (!region.nondegenerate()) throw ConfigError("region must satisfy re_min < re_max and im_min < im_max");
    if (n_re < kMinResolution || n_im < kMinResolution) {
        throw ConfigError("resolution below minimum (" + std::to_string(kMinResolution) + " per axis)");
    }
    const std::size_t nodes = static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im);
    sorted_.resize(nodes * n_);
    canonical_.resize(nodes * n_);
    perms_.resize(nodes);
}

double SheetGrid::step_re() const { return (region_.re_max - region_.re_min) / (n_re_ - 1); }
double SheetGrid::step_im() const { return (region_.im_max - region_.im_min) / (n_im_ - 1); }
double SheetGrid::cell_diameter() const { return std::hypot(step_re(), step_im()); }

Complex SheetGrid::node(int j, int k) const {
    return {region_.re_min + j * step_re(), region_.im_min + k * step_im()};
}

std::span<const Complex> SheetGrid::sorted(int j, int k) const {
    return {sorted_.data() + index(j, k) * n_, n_};
}

std::span<const Complex> SheetGrid::canonical(int j, int k) const {
    return {canonical_.data() + index(j, k) * n_, n_};
}

void SheetGrid::set_node(int j, int k, std::vector<Complex> canonical_values, SortedSheets sorted) {
    const std::size_t base = index(j, k) * n_;
    std::copy(canonical_values.begin(), canonical_values.end(), canonical_.begin() + static_cast<std::ptrdiff_t>(base));
    std::copy(sorted.values.begin(), sorted.values.end(), sorted_.begin() + static_cast<std::ptrdiff_t>(base));
    perms_[index(j, k)] = std::move(sorted.from_input);
}

SheetGrid sample_grid(const PolyMatrixFamily& f, Region region, int n_re, int n_im, SortCriterion c,
                      double eig_tol) {
    SheetGrid grid(region, n_re, n_im, c, f.size());
    const std::size_t nodes = static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im);
    parallel_for(nodes, [&](std::size_t idx) {
        const int j = static_cast<int>(idx % static_cast<std::size_t>(n_re));
        const int k = static_cast<int>(idx / static_cast<std::size_t>(n_re));
        const Complex z = grid.node(j, k);
        std::vector<Complex> eig;
        try {
            eig = eigenvalues(f.evaluate(z), eig_tol);
        } catch (const NonConvergence& e) {
            throw NonConvergence(std::string(e.what()) + " at grid node (" + std::to_string(j) + ", " +
                                 std::to_string(k) + "), z = " + format_complex(z));
        }
        SortedSheets s = sort_sheets(eig, c);
        grid.set_node(j, k, std::move(eig), std::move(s));
    });
    return grid;
}

std::vector<Complex> scan_gap_minima(const SheetGrid& grid, double threshold) {
    if (grid.dimension() < 2) return {};
    std::vector<double> gap(static_cast<std::size_t>(grid.n_re()) * static_cast<std::size_t>(grid.n_im()));
    for (int k = 0; k < grid.n_im(); ++k)
        for (int j = 0; j < grid.n_re(); ++j) gap[grid.index(j, k)] = min_pairwise_gap(grid.canonical(j, k));
    std::vector<Complex> out;
    for (int k = 0; k < grid.n_im(); ++k) {
        for (int j = 0; j < grid.n_re(); ++j) {
            const double g = gap[grid.index(j, k)];
            if (g >= threshold) continue;
            bool local_min = true;
            for (int dk = -1; dk <= 1 && local_min; ++dk)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int jj = j + dj;
                    const int kk = k + dk;
                    if ((dj == 0 && dk == 0) || jj < 0 || kk < 0 || jj >= grid.n_re() || kk >= grid.n_im()) continue;
                    if (gap[grid.index(jj, kk)] < g) {
                        local_min = false;
                        break;
                    }
                }
            if (local_min) out.push_back(grid.node(j, k));
        }
    }
    return out;
}

}  // namespace epwind
