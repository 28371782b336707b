// Singular reduction of the shell dynamics.  With L the angular momentum and
// K = n e the scaled eccentricity vector (L.K = 0, |L|^2 + |K|^2 = n^2), the
// invariants of the combined Lz- and Keplerian S^1 actions are
//
//   rho1 = Kz,  rho2 = Lx^2 + Ly^2 - Kx^2 - Ky^2,  rho3 = 2(Kx Ly - Ky Lx),
//
// subject to the Casimir constraint C = 0 on the reduced phase space.  The
// factor 2 in rho3 is what makes C vanish identically on the constraint set.
#pragma once

#include <array>

#include "prolate/core.hpp"

namespace prolate {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// A point of the shell phase space in (L, K) coordinates.
struct CartesianState {
    Vec3 L;
    Vec3 K;
};

// Image of a state on the reduced phase space for fixed (n, m).
struct ReducedPoint {
    double rho1, rho2, rho3;
    double n, m;
    double casimir_residual;
};

// Project a state; rejects violations of L.K = 0, |L|^2 + |K|^2 = n^2 and
// Lz = m beyond 1e-8 (relative to n^2).
ReducedPoint reduce(const CartesianState& state, double n, double m);

// C = (n^2 - (m + rho1)^2)(n^2 - (m - rho1)^2) - rho2^2 - rho3^2.
double casimir(const ReducedPoint& p);

// Gradient of C (exact; C is a polynomial).
Vec3 casimir_gradient(const ReducedPoint& p);

// Antisymmetric structure matrix B with {rho_i, rho_j} = B_ij:
// {rho1,rho2} = 2 rho3, {rho1,rho3} = -2 rho2,
// {rho2,rho3} = 4 rho1 (n^2 + m^2 - rho1^2).
Mat3 structure_matrix(const ReducedPoint& p);

// G restricted to the reduced space:
// G = (rho2 + (n^2 - rho1^2) + m^2)/2 + 2 a rho1 / n.
double reduced_G(const ReducedPoint& p, const SystemParams& params);

// Nature of the singular point (rho1, rho2, rho3) = (n, 0, 0) at m = 0:
// the G level set through it meets the local cone transversally
// (slope 2n - 4a/n strictly between the cone slopes +-2n) iff 0 < a < n^2.
enum class SingularPointType { PinchedTorus, EllipticEquilibrium, Degenerate };
SingularPointType classify_singular_point(double n, const SystemParams& params);

// rho3 = 0 section of the reduced phase space together with G level lines,
// for plotting: rho2 = +-sqrt((n^2-(m+rho1)^2)(n^2-(m-rho1)^2)) over the
// admissible rho1 range, plus the line rho2(rho1) for each requested g.
struct SliceData {
    std::vector<std::array<double, 2>> upper;     // (rho1, +R)
    std::vector<std::array<double, 2>> lower;     // (rho1, -R)
    struct GLine {
        double g;
        std::vector<std::array<double, 2>> pts;
    };
    std::vector<GLine> lines;
    bool is_point;  // |m| = n: the slice degenerates to (0, 0)
};
SliceData phase_space_slice(double n, double m, const SystemParams& params,
                            const std::vector<double>& g_values);

// Range of G over the reduced phase space C = 0 (1-D optimization); equals
// the classical g-range of the column at lz = m.
struct GRange {
    double lo, hi;
};
GRange reduced_g_range(double n, double m, const SystemParams& params);

}  // namespace prolate
