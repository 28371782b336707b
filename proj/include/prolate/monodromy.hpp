// Lattice-defect detection in the joint spectrum.  A fundamental cell
// (anchor point plus basis steps u to the adjacent column and v to the next
// eigenvalue) is parallel-transported around a closed rectangular circuit in
// the (m, g) plane; the change of basis on return is the monodromy matrix.
#pragma once

#include <numeric>
#include <vector>

#include "prolate/core.hpp"

namespace prolate {

// Joint spectrum viewed as a lattice; g spacings are normalized by the
// global mean within-column nearest-neighbor spacing.
struct SpectralLattice {
    int n;
    std::map<int, std::vector<double>> columns;
    double scaling;

    const std::vector<double>& column(int m) const;
};

SpectralLattice build_lattice(const JointSpectrum& spectrum);

// Rectangular circuit around (center_lz, center_g): anchor columns span
// m_center +- width; the horizontal legs run near g_bottom and g_top.
// Built counterclockwise unless clockwise is set.
struct LoopSpec {
    int m_center;
    int width;
    double center_lz;
    double center_g;
    double g_bottom;
    double g_top;
    bool clockwise = false;
};

// Widest loop around the center that transports successfully.  Anchor
// columns need a whole cell below and a point above the center height;
// candidate widths are tried in decreasing order because snapping can
// still degenerate near the lattice boundary.
LoopSpec default_loop(const SpectralLattice& lattice, double center_lz,
                      double center_g, int width_override = 0);

struct MonodromyMatrix {
    // Column-vector convention: columns are the transported images of the
    // initial basis (u, v) expressed in that same basis.
    int a11, a12, a21, a22;

    int det() const { return a11 * a22 - a12 * a21; }
    int trace() const { return a11 + a22; }
    bool is_identity() const {
        return a11 == 1 && a12 == 0 && a21 == 0 && a22 == 1;
    }
    // gcd of the entries of M - I for a unipotent M (0 for the identity,
    // -1 if M is not unipotent).
    int defect_index() const {
        if (det() != 1 || trace() != 2) return -1;
        return std::gcd(std::gcd(a11 - 1, a12), std::gcd(a21, a22 - 1));
    }
};

struct TraceCell {
    int m, k;
    double g;
    int u_k;
    double u_g;  // matched point in column m+1
    int v_k;
    double v_g;  // next eigenvalue in column m
};

struct MonodromyResult {
    MonodromyMatrix matrix;
    LoopSpec loop;
    std::vector<TraceCell> trace;
};

// Transport a fundamental cell around the loop.  Every step predicts the new
// cell from the current one and snaps each corner to the nearest lattice
// point; ambiguous snaps (two candidates within 10%) raise NumericalError.
MonodromyResult transport_cell(const SpectralLattice& lattice,
                               const LoopSpec& loop);

}  // namespace prolate
