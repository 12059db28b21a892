#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epwind/family.hpp"
#include "epwind/linalg.hpp"
#include "epwind/permutation.hpp"

namespace epwind {

enum class SortKey { RealPart, ImagPart, Magnitude };

/// Descending sort on a primary key with a fixed tie-break chain:
/// RealPart -> ImagPart, ImagPart -> RealPart, Magnitude -> phase in (-pi, pi].
/// Exact ties on both keys keep input order.
struct SortCriterion {
    SortKey key = SortKey::RealPart;

    /// Accepts "real", "imag", "abs" (and the long names).
    static SortCriterion parse(std::string_view token);
    std::string token() const;

    double primary(Complex v) const;
    double secondary(Complex v) const;
    /// True when a belongs in an earlier (higher) slot than b.
    bool before(Complex a, Complex b) const;

    friend bool operator==(const SortCriterion&, const SortCriterion&) = default;
};

struct SortedSheets {
    /// values[0] is slot 1, the largest key.
    std::vector<Complex> values;
    /// Maps input position to slot: values[from_input(i)] == input[i].
    Permutation from_input;
};

SortedSheets sort_sheets(std::span<const Complex> eigs, SortCriterion c);

/// Closed rectangle [re_min, re_max] x [im_min, im_max].
struct Region {
    double re_min = -1.0;
    double re_max = 1.0;
    double im_min = -1.0;
    double im_max = 1.0;

    bool nondegenerate() const { return re_max > re_min && im_max > im_min; }
    bool contains(Complex z, double slack = 0.0) const;
    double diagonal() const;
};

/// Criterion-sorted spectra sampled on a rectangular lattice. Node (j, k) sits
/// at z = re_min + j*dre + i*(im_min + k*dim).
class SheetGrid {
public:
    static constexpr int kMinResolution = 16;

    SheetGrid(Region region, int n_re, int n_im, SortCriterion criterion, std::size_t dimension);

    const Region& region() const noexcept { return region_; }
    int n_re() const noexcept { return n_re_; }
    int n_im() const noexcept { return n_im_; }
    SortCriterion criterion() const noexcept { return criterion_; }
    std::size_t dimension() const noexcept { return n_; }
    double step_re() const;
    double step_im() const;
    double cell_diameter() const;

    Complex node(int j, int k) const;
    std::size_t index(int j, int k) const { return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_re_) + static_cast<std::size_t>(j); }

    /// Sorted slot values at a node.
    std::span<const Complex> sorted(int j, int k) const;
    /// Eigenvalues in canonical (solver) order at a node.
    std::span<const Complex> canonical(int j, int k) const;
    const Permutation& sort_permutation(int j, int k) const { return perms_[index(j, k)]; }

    void set_node(int j, int k, std::vector<Complex> canonical_values, SortedSheets sorted);

private:
    Region region_;
    int n_re_;
    int n_im_;
    SortCriterion criterion_;
    std::size_t n_;
    std::vector<Complex> sorted_;
    std::vector<Complex> canonical_;
    std::vector<Permutation> perms_;
};

/// Samples the family on the lattice. Nodes are independent; the result is
/// identical for any thread count. NonConvergence is rethrown naming the node.
SheetGrid sample_grid(const PolyMatrixFamily& f, Region region, int n_re, int n_im, SortCriterion c,
                      double eig_tol = kDefaultEigenTol);

/// Lattice nodes whose spectral gap is a local minimum below `threshold`;
/// a coarse cross-check on discriminant roots.
std::vector<Complex> scan_gap_minima(const SheetGrid& grid, double threshold);

}  // namespace epwind
