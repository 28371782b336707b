// Classical side of the separated problem.  Separation of the Kepler
// Hamiltonian in prolate spheroidal coordinates (xi, eta, phi) reduces both
// the eta in [-1,1] and the xi in [1,inf) motions to the same quartic
//
//   P(s) = (2 a^2 E (s^2-1) + 2 a s - g)(s^2-1) - lz^2,
//
// with momentum p_s = sqrt(P(s)) / |s^2 - 1|.  The critical values of the
// energy-momentum map are where P acquires a double root.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "prolate/core.hpp"

namespace prolate {

struct SeparationQuartic {
    // Descending coefficients: coeff[0] s^4 + ... + coeff[4].
    std::array<double, 5> coeff;
    double E, g, lz, a;

    double eval(double s) const;
    double deriv(double s) const;
};

SeparationQuartic separation_quartic(double E, double g, double lz,
                                     const SystemParams& params);

// Real roots, ascending, with multiplicity (2 for a coalesced pair).
struct QuarticRoot {
    double s;
    int multiplicity;
};
std::vector<QuarticRoot> real_roots(const SeparationQuartic& P);

// Discriminant of the quartic (zero iff P has a multiple root).
double discriminant(const SeparationQuartic& P);

struct Interval {
    double lo, hi;
    double width() const { return hi - lo; }
};

// Classically allowed ranges {P >= 0} of the eta and xi degrees of freedom.
// Each side may be empty, one interval, or (beyond the bifurcation at
// a = n^2) two disjoint intervals.
struct TurningPoints {
    std::vector<Interval> eta;
    std::vector<Interval> xi;
    bool eta_degenerate = false;   // collapsed interval or double-root endpoint
    bool xi_degenerate = false;
    bool shared_endpoint = false;  // eta and xi touch at s = 1

    bool empty() const { return eta.empty() && xi.empty(); }
};

TurningPoints turning_points(const SeparationQuartic& P);

// p_s = sqrt(P(s)) / |s^2 - 1|; rejects the forbidden region and s = +-1.
double momentum(double s, const SeparationQuartic& P);

// A critical value (lz >= 0 branch) of the energy-momentum map at fixed E.
struct CriticalPoint {
    double lz;
    double g;
};

// Solve P(s0) = P'(s0) = 0 for (g, lz^2) at the double-root location s0.
// Returns nullopt where lz^2 < 0 (no real critical value).
std::optional<CriticalPoint> critical_curve(double E, const SystemParams& params,
                                            double s0);

// The isolated critical value (0, 2a), present iff n > sqrt(a).
struct IsolatedValue {
    enum class Status { present, absent, degenerate };
    Status status;
    CriticalPoint value;  // (0, 2a); meaningful unless status == absent
};
IsolatedValue isolated_critical_value(double n, const SystemParams& params);

// Range of g on the critical set at fixed E and |lz|; the joint spectrum
// column at integer lz = m lies inside this interval.
Interval column_g_range(double E, double lz, const SystemParams& params);

// Kepler ellipses of energy E passing through the empty focus -a on the z
// axis.  The family exists for E > -1/(2a); member t has its second focus
// at distance (-1/E - 2a) from -a, at angle t in the (x, z) plane.
struct EllipseFamilyMember {
    double t;
    std::array<double, 3> primary_focus;  // the nucleus, (0, 0, a)
    std::array<double, 3> second_focus;
    double semi_major;

    // Point on the orbit, (x, z) plane, theta in [0, 2pi).
    std::array<double, 2> point_at(double theta) const;
};
EllipseFamilyMember critical_ellipse_family(double E, const SystemParams& params,
                                            double t);

// Prolate spheroidal coordinates of a Cartesian point (foci at +-a on z).
struct ProlateCoords {
    double xi;   // >= 1
    double eta;  // in [-1, 1]
    double phi;  // in [0, 2pi); 0 on the z axis
};
ProlateCoords prolate_from_cartesian(const std::array<double, 3>& r,
                                     const SystemParams& params);

}  // namespace prolate
