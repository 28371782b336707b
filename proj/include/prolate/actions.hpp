// Classical actions of the separated motions and EBK (torus) quantization.
//
// Each separated degree of freedom contributes I = (1/pi) Int sqrt(P)/|s^2-1| ds
// over its allowed interval; together with I_phi = lz the actions obey
// I_eta + I_xi + |I_phi| = 1/sqrt(-2E).
#pragma once

#include "prolate/classical.hpp"
#include "prolate/core.hpp"

namespace prolate {

// Nodes and weights of N-point Gauss-Legendre quadrature on [-1, 1].
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int n);

struct ActionResult {
    double value;
    double error;     // node-doubling estimate
    bool degenerate;  // interval collapsed to a point
};

// Action integral over one allowed interval.  The substitution
// s = mid + half*sin(theta) absorbs the square-root turning-point
// singularities; node count doubles from 64 until the change is < 1e-10.
ActionResult action(const Interval& interval, const SeparationQuartic& P);

struct ActionTriple {
    double i_phi;
    double i_eta;
    double i_xi;
    double quad_error;
};

// Actions at a point of the energy-momentum map (requires a connected
// allowed interval on each side).
ActionTriple actions_at(double E, double g, double lz, const SystemParams& params);

// | I_eta + I_xi + |lz| - 1/sqrt(-2E) |.
double sum_rule_residual(double E, double g, double lz, const SystemParams& params);

// EBK label of a joint state: actions (n_eta + 1/2, n_xi + 1/2, m) with
// n_eta + n_xi + |m| + 1 = n.
struct EbkLabel {
    int n;
    int m;
    int n_eta;

    EbkLabel(int n_, int m_, int n_eta_);
    int n_xi() const { return n - std::abs(m) - n_eta - 1; }
};

// Semiclassical eigenvalue: the g at which I_eta(E_n, g, m) = n_eta + 1/2.
double ebk_g(const EbkLabel& label, const SystemParams& params);

}  // namespace prolate
