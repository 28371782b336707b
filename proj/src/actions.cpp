#include "prolate/actions.hpp"

#include <cmath>
#include <unordered_map>

namespace prolate {

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
    thread_local std::unordered_map<int, GaussLegendre> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.x.resize(n);
    gl.w.resize(n);
    const double pi = std::acos(-1.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n(x).
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        gl.x[i] = -x;
        gl.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.w[i] = w;
        gl.w[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(gl)).first->second;
}

namespace {

// One pass of the substituted integral with a fixed node count.
double action_pass(const Interval& iv, const SeparationQuartic& P, int n) {
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * (iv.hi - iv.lo);
    const double pi = std::acos(-1.0);
    const auto& gl = gauss_legendre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = 0.5 * pi * gl.x[i];
        const double s = mid + half * std::sin(theta);
        double v = P.eval(s);
        if (v < 0.0) v = 0.0;  // roundoff next to a turning point
        // |s^2 - 1| assembled factor by factor: when the interval ends at a
        // coordinate pole (+-1), forming s*s - 1 directly cancels to zero at
        // nodes that round onto the pole, while (mid -+ 1) + half sin(theta)
        // keeps the exact offset.
        const double sp1 = (mid + 1.0) + half * std::sin(theta);
        const double sm1 = (mid - 1.0) + half * std::sin(theta);
        const double den = std::fabs(sp1 * sm1);
        if (den == 0.0) continue;
        sum += gl.w[i] * std::sqrt(v) / den * half * std::cos(theta);
    }
    // dtheta = (pi/2) dx and the 1/pi action prefactor combine to 1/2.
    return 0.5 * sum;
}

}  // namespace

ActionResult action(const Interval& iv, const SeparationQuartic& P) {
    if (!(iv.hi >= iv.lo))
        throw PreconditionError("action: interval must satisfy lo <= hi");
    if (iv.width() < 1e-9 * std::max(1.0, std::fabs(iv.lo)))
        return ActionResult{0.0, 0.0, true};

    double prev = action_pass(iv, P, 64);
    for (int n = 128; n <= 8192; n *= 2) {
        const double cur = action_pass(iv, P, n);
        const double err = std::fabs(cur - prev);
        if (err < 1e-10 || n == 8192) return ActionResult{cur, err, false};
        prev = cur;
    }
    return ActionResult{prev, 0.0, false};  // unreachable
}

ActionTriple actions_at(double E, double g, double lz,
                        const SystemParams& params) {
    const auto P = separation_quartic(E, g, lz, params);
    const auto tp = turning_points(P);
    if (tp.eta.empty() || tp.xi.empty())
        throw PreconditionError(
            "actions_at: no classically allowed interval on each side");
    if (tp.eta.size() > 1 || tp.xi.size() > 1)
        throw NumericalError("actions_at: disconnected allowed region");

    ActionTriple t{lz, 0.0, 0.0, 0.0};
    {
        const auto r = action(tp.eta.front(), P);
        t.i_eta = r.value;
        t.quad_error += r.error;
    }
    {
        const auto r = action(tp.xi.front(), P);
        t.i_xi = r.value;
        t.quad_error += r.error;
    }
    return t;
}

double sum_rule_residual(double E, double g, double lz,
                         const SystemParams& params) {
    const auto t = actions_at(E, g, lz, params);
    return std::fabs(t.i_eta + t.i_xi + std::fabs(t.i_phi) -
                     1.0 / std::sqrt(-2.0 * E));
}

EbkLabel::EbkLabel(int n_, int m_, int n_eta_) : n(n_), m(m_), n_eta(n_eta_) {
    if (n < 1) throw PreconditionError("EbkLabel: n must be >= 1");
    if (std::abs(m) > n - 1) throw PreconditionError("EbkLabel: |m| must be <= n-1");
    if (n_eta < 0 || n_eta > n - std::abs(m) - 1)
        throw PreconditionError("EbkLabel: n_eta out of range");
}

namespace {

// I_eta at fixed (E, lz) as a function of g; strictly increasing on the
// classical range (dP/dg = 1 - s^2 > 0 on the eta side).
double eta_action(double E, double g, double lz, const SystemParams& params) {
    const auto P = separation_quartic(E, g, lz, params);
    const auto tp = turning_points(P);
    if (tp.eta.empty()) return 0.0;
    if (tp.eta.size() > 1)
        throw NumericalError("ebk_g: disconnected eta region");
    return action(tp.eta.front(), P).value;
}

}  // namespace

double ebk_g(const EbkLabel& label, const SystemParams& params) {
    const double E = energy_from_n(label.n);
    const double lz = double(label.m);
    const double target = label.n_eta + 0.5;

    // I_eta rises monotonically across the classical range, from 0 where the
    // eta interval collapses at the bottom edge to 1/sqrt(-2E) - |lz| where
    // the xi interval collapses at the top (the three actions sum to
    // 1/sqrt(-2E) at fixed energy).  Valid labels keep target in (0, that
    // limit), so the quantization point is bracketed without evaluating the
    // action at the singular edges themselves.
    const Interval range = column_g_range(E, lz, params);

    // Bisection, then secant refinement on the action residual.
    double glo = range.lo, ghi = range.hi;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (glo + ghi);
        const double fm = eta_action(E, mid, lz, params) - target;
        if (std::fabs(fm) < 1e-10) return mid;
        if (fm < 0.0)
            glo = mid;
        else
            ghi = mid;
        if (ghi - glo < 1e-13 * std::max(1.0, std::fabs(mid))) break;
    }
    double x0 = glo, x1 = ghi;
    double f0 = eta_action(E, x0, lz, params) - target;
    double f1 = eta_action(E, x1, lz, params) - target;
    for (int it = 0; it < 8; ++it) {
        if (f1 == f0) break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 > range.lo && x2 < range.hi)) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = eta_action(E, x1, lz, params) - target;
        if (std::fabs(f1) < 1e-10) break;
    }
    if (std::fabs(f1) > 1e-6)
        throw NumericalError("ebk_g: quantization solver stalled");
    return x1;
}

}  // namespace prolate
