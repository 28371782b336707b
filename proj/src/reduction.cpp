#include "prolate/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace prolate {

ReducedPoint reduce(const CartesianState& st, double n, double m) {
    if (!(n > 0.0)) throw PreconditionError("reduce: n must be > 0");
    const double scale = n * n;
    const double ldotk =
        st.L[0] * st.K[0] + st.L[1] * st.K[1] + st.L[2] * st.K[2];
    const double norm2 = st.L[0] * st.L[0] + st.L[1] * st.L[1] +
                         st.L[2] * st.L[2] + st.K[0] * st.K[0] +
                         st.K[1] * st.K[1] + st.K[2] * st.K[2];
    if (std::fabs(ldotk) > 1e-8 * scale)
        throw PreconditionError("reduce: L.K = 0 violated");
    if (std::fabs(norm2 - scale) > 1e-8 * scale)
        throw PreconditionError("reduce: |L|^2 + |K|^2 = n^2 violated");
    if (std::fabs(st.L[2] - m) > 1e-8 * std::max(1.0, std::fabs(m)))
        throw PreconditionError("reduce: Lz = m violated");

    ReducedPoint p;
    p.rho1 = st.K[2];
    p.rho2 = st.L[0] * st.L[0] + st.L[1] * st.L[1] - st.K[0] * st.K[0] -
             st.K[1] * st.K[1];
    // The factor 2 normalizes the invariant so that C vanishes identically
    // on the constraint set (Lagrange identity on the transverse components).
    p.rho3 = 2.0 * (st.K[0] * st.L[1] - st.K[1] * st.L[0]);
    p.n = n;
    p.m = m;
    p.casimir_residual = casimir(p);
    return p;
}

double casimir(const ReducedPoint& p) {
    const double n2 = p.n * p.n;
    const double sp = p.m + p.rho1, sm = p.m - p.rho1;
    return (n2 - sp * sp) * (n2 - sm * sm) - p.rho2 * p.rho2 -
           p.rho3 * p.rho3;
}

Vec3 casimir_gradient(const ReducedPoint& p) {
    // d C / d rho1 simplifies to -4 rho1 (n^2 + m^2 - rho1^2).
    const double w = p.n * p.n + p.m * p.m - p.rho1 * p.rho1;
    return {-4.0 * p.rho1 * w, -2.0 * p.rho2, -2.0 * p.rho3};
}

Mat3 structure_matrix(const ReducedPoint& p) {
    const double w = p.n * p.n + p.m * p.m - p.rho1 * p.rho1;
    const double b23 = 4.0 * p.rho1 * w;
    return {{{0.0, 2.0 * p.rho3, -2.0 * p.rho2},
             {-2.0 * p.rho3, 0.0, b23},
             {2.0 * p.rho2, -b23, 0.0}}};
}

double reduced_G(const ReducedPoint& p, const SystemParams& params) {
    return 0.5 * (p.rho2 + (p.n * p.n - p.rho1 * p.rho1) + p.m * p.m) +
           2.0 * params.a * p.rho1 / p.n;
}

SingularPointType classify_singular_point(double n, const SystemParams& params) {
    if (!(n > 0.0))
        throw PreconditionError("classify_singular_point: n must be > 0");
    // Slope of {G = 2a} against the cone slopes +-2n at (rho1, rho2) = (n, 0).
    const double level_slope = 2.0 * n - 4.0 * params.a / n;
    const double cone_slope = 2.0 * n;
    if (std::fabs(level_slope) < cone_slope) return SingularPointType::PinchedTorus;
    if (std::fabs(level_slope) > cone_slope)
        return SingularPointType::EllipticEquilibrium;
    return SingularPointType::Degenerate;
}

SliceData phase_space_slice(double n, double m, const SystemParams& params,
                            const std::vector<double>& g_values) {
    if (!(n > 0.0)) throw PreconditionError("phase_space_slice: n must be > 0");
    const double am = std::fabs(m);
    if (am > n)
        throw PreconditionError("phase_space_slice: |m| must be <= n");

    SliceData sd;
    sd.is_point = (am == n);
    const double r1max = n - am;
    const int N = 801;
    if (sd.is_point) {
        sd.upper.push_back({0.0, 0.0});
        sd.lower.push_back({0.0, 0.0});
    } else {
        for (int i = 0; i < N; ++i) {
            const double r1 = -r1max + 2.0 * r1max * i / double(N - 1);
            const double n2 = n * n, sp = m + r1, sm = m - r1;
            const double prod = (n2 - sp * sp) * (n2 - sm * sm);
            const double R = std::sqrt(std::max(0.0, prod));
            sd.upper.push_back({r1, R});
            sd.lower.push_back({r1, -R});
        }
    }
    for (double g : g_values) {
        SliceData::GLine line;
        line.g = g;
        const double span = std::max(1.0, r1max);
        for (int i = 0; i < N; ++i) {
            const double r1 = -span + 2.0 * span * i / double(N - 1);
            const double rho2 = 2.0 * (g - 2.0 * params.a * r1 / n) -
                                (n * n - r1 * r1) - m * m;
            line.pts.push_back({r1, rho2});
        }
        sd.lines.push_back(std::move(line));
    }
    return sd;
}

GRange reduced_g_range(double n, double m, const SystemParams& params) {
    if (!(n > 0.0)) throw PreconditionError("reduced_g_range: n must be > 0");
    const double am = std::fabs(m);
    if (am >= n)
        throw PreconditionError("reduced_g_range: |m| must be < n");
    const double r1max = n - am;
    const double n2 = n * n;

    // G restricted to C = 0 depends on rho1 and the sign branch of rho2:
    // G(+-)(rho1) = ((+-)R + n^2 - rho1^2 + m^2)/2 + 2 a rho1 / n.
    auto eval = [&](double r1, double sgn) {
        const double sp = m + r1, sm = m - r1;
        const double R =
            std::sqrt(std::max(0.0, (n2 - sp * sp) * (n2 - sm * sm)));
        return 0.5 * (sgn * R + n2 - r1 * r1 + m * m) +
               2.0 * params.a * r1 / n;
    };

    double lo = eval(-r1max, -1.0), hi = lo;
    const int N = 4001;
    double best_lo = -r1max, best_hi = -r1max;
    double sgn_lo = -1.0, sgn_hi = -1.0;
    for (int i = 0; i < N; ++i) {
        const double r1 = -r1max + 2.0 * r1max * i / double(N - 1);
        for (double sgn : {-1.0, 1.0}) {
            const double v = eval(r1, sgn);
            if (v < lo) {
                lo = v;
                best_lo = r1;
                sgn_lo = sgn;
            }
            if (v > hi) {
                hi = v;
                best_hi = r1;
                sgn_hi = sgn;
            }
        }
    }
    // Golden-section refinement around the grid optima.
    const double h = 2.0 * r1max / double(N - 1);
    auto refine = [&](double center, double sgn, double dir) {
        double a_ = std::max(-r1max, center - h), b_ = std::min(r1max, center + h);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c_ = b_ - gr * (b_ - a_), d_ = a_ + gr * (b_ - a_);
        for (int it = 0; it < 120; ++it) {
            if (dir * eval(c_, sgn) < dir * eval(d_, sgn))
                b_ = d_;
            else
                a_ = c_;
            c_ = b_ - gr * (b_ - a_);
            d_ = a_ + gr * (b_ - a_);
            if (b_ - a_ < 1e-14 * std::max(1.0, std::fabs(a_))) break;
        }
        return eval(0.5 * (a_ + b_), sgn);
    };
    lo = std::min(lo, refine(best_lo, sgn_lo, +1.0));
    hi = std::max(hi, refine(best_hi, sgn_hi, -1.0));
    return GRange{lo, hi};
}

}  // namespace prolate
