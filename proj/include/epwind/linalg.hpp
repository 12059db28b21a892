#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "epwind/complex_matrix.hpp"
#include "epwind/poly.hpp"

namespace epwind {

inline constexpr double kDefaultEigenTol = 1e-14;
inline constexpr double kDefaultRootTol = 1e-14;

/// Eigenvalues (with multiplicity) by Householder Hessenberg reduction and
/// Wilkinson-shifted complex QR. Returned in canonical order: real part
/// ascending, then imaginary part ascending.
///
/// Throws NonConvergence after 100*n QR sweeps, InvalidInput on non-finite entries.
std::vector<Complex> eigenvalues(const ComplexMatrix& m, double tol = kDefaultEigenTol);

/// Monic det(lambda*I - m) by the division-free Berkowitz recursion.
ComplexPoly char_poly(const ComplexMatrix& m);

struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

/// Roots grouped into multiplicity clusters, via Aberth-Ehrlich iteration.
///
/// A group of nearby roots is merged when the polished centre is a common
/// root of p, p', ..., p^(m-1) to working precision. Throws NonConvergence
/// if the 1000-iteration budget is exhausted.
std::vector<RootCluster> root_clusters(const ComplexPoly& p, double tol = kDefaultRootTol);

/// Flattened multiset form of root_clusters, canonical order as for eigenvalues.
std::vector<Complex> poly_roots(const ComplexPoly& p, double tol = kDefaultRootTol);

double min_pairwise_gap(std::span<const Complex> values);

/// Canonical ordering used for eigenvalue and root multisets.
void sort_canonical(std::vector<Complex>& values);

/// Rank by Gaussian elimination with complete pivoting; pivots at or below
/// rel_tol * ||m||_F count as zero.
std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol);

/// Solves m x = b by LU with partial pivoting. Throws InvalidInput if singular.
std::vector<Complex> solve(const ComplexMatrix& m, std::vector<Complex> b);

/// Unit vector approximately spanning the null space of (m - lambda I).
std::vector<Complex> inverse_iteration(const ComplexMatrix& m, Complex lambda, int sweeps = 3);

}  // namespace epwind
