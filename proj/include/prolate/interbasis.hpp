// Exact joint spectrum of (H, G, Lz) within a shell.  In the spherical basis
// |n l m> the operator G = L^2 + 2a e_z is tridiagonal in l (Coulson &
// Robinson 1958); its eigenvalues are the g values of the joint spectrum.
#pragma once

#include <vector>

#include "prolate/core.hpp"

namespace prolate {

// Symmetric tridiagonal matrix.  diag[i] = l(l+1) with l = |m| + i; the
// positive couplings offdiag[i] connect l = |m|+i to l = |m|+i+1.
struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag;  // size diag.size() - 1

    std::size_t size() const { return diag.size(); }
};

// Matrix of G restricted to shell n and magnetic number m,
// dimension (n - |m|) x (n - |m|).
TridiagonalMatrix build_matrix(int n, int m, const SystemParams& params);

// Number of eigenvalues of A strictly below x (Sturm / LDL^T sign count).
int sturm_count_below(const TridiagonalMatrix& A, double x);

// All eigenvalues, ascending.  Bisection on the Sturm count bracket each
// eigenvalue; a few guarded Newton steps on the characteristic-polynomial
// recurrence polish it.  Accuracy ~1e-13 * max(1, |g|).
std::vector<double> eigenvalues(const TridiagonalMatrix& A);

// Joint spectrum of shell n: one column of eigenvalues per m.
JointSpectrum joint_spectrum(int n, const SystemParams& params);

}  // namespace prolate
