// Independent check on the algebraic joint spectrum: the separated radial
// and angular equations are integrated numerically and eigenvalues of the
// separation constant are located by shooting.  The separated equation in
// either variable reads
//
//   d/ds[(s^2 - 1) psi'] + [2 a^2 E (s^2 - 1) + 2 a s - g - m^2/(s^2-1)] psi = 0
//
// with s = eta on (-1, 1) and s = xi on (1, inf).  Joint eigenvalues are the
// g where both problems admit regular solutions simultaneously.
#pragma once

#include <vector>

#include "prolate/core.hpp"

namespace prolate {

// Normalized Wronskian mismatch of the angular solutions grown from both
// endpoints and matched at s = 0.  Vanishes at angular eigenvalues.
double eta_mismatch(double energy, double g, int m, const SystemParams& params);

// Same for the radial problem: a regular solution grown outward from s = 1
// meets a bound-state solution integrated inward from the asymptotic region.
// xi_max_factor stretches the asymptotic start (used to verify that the
// cutoff does not influence the result).
double xi_mismatch(double energy, double g, int m, const SystemParams& params,
                   double xi_max_factor = 1.0);

struct ShootingSpectrum {
    std::vector<double> g;
    // Largest |xi mismatch| re-evaluated with a doubled asymptotic cutoff
    // at the converged eigenvalues.
    double cutoff_residual;
    int grid_size;
};

// All joint eigenvalues for a column: scans the classically allowed range
// of g, brackets simultaneous sign changes of both mismatches and bisects.
// Throws NumericalError if the count does not match the algebraic dimension.
ShootingSpectrum shooting_spectrum(int n, int m, const SystemParams& params);

// Angular solution sampled on a uniform grid (for residual tests).
struct SolutionProfile {
    std::vector<double> s;
    std::vector<double> psi;
    std::vector<double> dpsi;
};

SolutionProfile eta_profile(double energy, double g, int m,
                            const SystemParams& params, double s_lo,
                            double s_hi, int n_points);

}  // namespace prolate
