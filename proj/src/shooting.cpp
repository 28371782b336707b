#include "prolate/shooting.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "prolate/classical.hpp"

namespace prolate {

namespace {

struct OdeParams {
    double energy, g, a;
    int m_abs;
};

int separated_rhs(double s, const double y[], double dyds[], void* raw) {
    const auto* p = static_cast<const OdeParams*>(raw);
    double f = s * s - 1.0;
    double q = 2.0 * p->a * p->a * p->energy * f + 2.0 * p->a * s - p->g -
               static_cast<double>(p->m_abs) * p->m_abs / f;
    dyds[0] = y[1];
    dyds[1] = -(2.0 * s * y[1] + q * y[0]) / f;
    return GSL_SUCCESS;
}

// (psi, dpsi/ds) a small step inside from a singular endpoint s0 = +-1,
// from the Frobenius series psi = t^(|m|/2) sum c_j t^j with t = sigma(s-s0).
std::array<double, 2> frobenius_start(int s0, int sigma, double t0,
                                      const OdeParams& p) {
    double mu = 0.5 * p.m_abs;
    double g = p.g, a = p.a, w = a * a * p.energy;
    constexpr int terms = 10;
    std::array<double, terms> c{};
    c[0] = 1.0;
    for (int k = 1; k < terms; ++k) {
        double x = mu + k;
        double t1 = sigma * (s0 * (4.0 * (x - 1.0) * (x - 2.0) +
                                   6.0 * (x - 1.0) - 2.0 * g) +
                             4.0 * a);
        double acc = t1 * c[k - 1];
        if (k >= 2) {
            double t2 = (x - 2.0) * (x - 3.0) + 2.0 * (x - 2.0) +
                        6.0 * a * s0 - g + 8.0 * w;
            acc += t2 * c[k - 2];
        }
        if (k >= 3) acc += 2.0 * sigma * (a + 4.0 * w * s0) * c[k - 3];
        if (k >= 4) acc += 2.0 * w * c[k - 4];
        c[k] = -acc / (4.0 * k * (k + p.m_abs));
    }
    double s_val = 0.0, s_der = 0.0;
    for (int j = terms - 1; j >= 0; --j) {
        s_val = s_val * t0 + c[j];
        s_der = s_der * t0 + (mu + j) * c[j];
    }
    double tpow = std::pow(t0, mu);
    double psi = tpow * s_val;
    double dpsi_dt = tpow / t0 * s_der;
    std::array<double, 2> y{psi, sigma * dpsi_dt};
    double norm = std::hypot(y[0], y[1]);
    y[0] /= norm;
    y[1] /= norm;
    return y;
}

void integrate(std::array<double, 2>& y, double s_from, double s_to,
               OdeParams& p) {
    gsl_odeiv2_system sys{separated_rhs, nullptr, 2, &p};
    double h0 = (s_to - s_from) * 1e-3;
    gsl_odeiv2_driver* drv = gsl_odeiv2_driver_alloc_y_new(
        &sys, gsl_odeiv2_step_rkf45, h0, 1e-250, 1e-12);
    double s = s_from;
    int status = gsl_odeiv2_driver_apply(drv, &s, s_to, y.data());
    gsl_odeiv2_driver_free(drv);
    if (status != GSL_SUCCESS)
        throw NumericalError("ODE integration failed: " +
                             std::string(gsl_strerror(status)));
}

double wronskian_mismatch(const std::array<double, 2>& ya,
                          const std::array<double, 2>& yb) {
    double w = ya[0] * yb[1] - ya[1] * yb[0];
    double norm = std::hypot(ya[0], ya[1]) * std::hypot(yb[0], yb[1]);
    return w / norm;
}

constexpr double kStepOff = 1e-3;

void check_inputs(double energy, double g) {
    if (!(energy < 0.0) || !std::isfinite(g))
        throw PreconditionError("shooting needs E < 0 and finite g");
}

}  // namespace

double eta_mismatch(double energy, double g, int m,
                    const SystemParams& params) {
    check_inputs(energy, g);
    OdeParams p{energy, g, params.a, std::abs(m)};
    auto y_left = frobenius_start(-1, +1, kStepOff, p);
    integrate(y_left, -1.0 + kStepOff, 0.0, p);
    auto y_right = frobenius_start(+1, -1, kStepOff, p);
    integrate(y_right, 1.0 - kStepOff, 0.0, p);
    return wronskian_mismatch(y_left, y_right);
}

double xi_mismatch(double energy, double g, int m, const SystemParams& params,
                   double xi_max_factor) {
    check_inputs(energy, g);
    if (!(xi_max_factor >= 1.0))
        throw PreconditionError("xi_max_factor must be >= 1");
    OdeParams p{energy, g, params.a, std::abs(m)};
    double kappa = std::sqrt(-2.0 * energy);
    double ka = kappa * params.a;
    double xi_mid = 1.0 + 2.0 / ka;
    double xi_max =
        std::max({30.0 / ka, 2.0 * xi_mid, 3.0}) * xi_max_factor;

    auto y_out = frobenius_start(+1, +1, kStepOff, p);
    integrate(y_out, 1.0 + kStepOff, xi_mid, p);

    // Bound-state asymptotics psi ~ exp(-kappa a xi) xi^(1/kappa - 1); only
    // the logarithmic derivative matters, the decaying character makes the
    // inward integration self-correcting.
    std::array<double, 2> y_in{1.0, -ka + (1.0 / kappa - 1.0) / xi_max};
    double norm = std::hypot(y_in[0], y_in[1]);
    y_in[0] /= norm;
    y_in[1] /= norm;
    integrate(y_in, xi_max, xi_mid, p);
    return wronskian_mismatch(y_out, y_in);
}

namespace {

double bisect_mismatch(double lo, double hi, double flo,
                       const std::function<double(double)>& f) {
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-11 * std::max(1.0, std::fabs(mid))) return mid;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_for_roots(double energy, int m,
                                   const SystemParams& params, double g_lo,
                                   double g_hi, int grid) {
    auto f_eta = [&](double g) { return eta_mismatch(energy, g, m, params); };
    auto f_xi = [&](double g) { return xi_mismatch(energy, g, m, params); };
    std::vector<double> ge(grid + 1), me(grid + 1), mx(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        ge[i] = g_lo + (g_hi - g_lo) * i / grid;
        me[i] = f_eta(ge[i]);
        mx[i] = f_xi(ge[i]);
    }
    std::vector<double> roots;
    for (int i = 0; i < grid; ++i) {
        bool flip_eta = me[i] * me[i + 1] < 0.0;
        bool flip_xi = mx[i] * mx[i + 1] < 0.0;
        if (!flip_eta || !flip_xi) continue;
        double r_eta = bisect_mismatch(ge[i], ge[i + 1], me[i], f_eta);
        double r_xi = bisect_mismatch(ge[i], ge[i + 1], mx[i], f_xi);
        // A joint eigenvalue zeroes both problems at the same g; a chance
        // coincidence of unrelated angular and radial roots does not.
        if (std::fabs(r_eta - r_xi) > 1e-7 * std::max(1.0, std::fabs(r_eta)))
            continue;
        roots.push_back(0.5 * (r_eta + r_xi));
    }
    return roots;
}

}  // namespace

ShootingSpectrum shooting_spectrum(int n, int m, const SystemParams& params) {
    if (n < 1 || std::abs(m) > n - 1)
        throw PreconditionError("invalid quantum numbers for shooting");
    double energy = energy_from_n(n);
    int expected = n - std::abs(m);
    Interval range = column_g_range(energy, m, params);
    double width = range.width();

    int grid = 600;
    double pad = 0.06;
    std::vector<double> roots;
    for (int attempt = 0; attempt < 2; ++attempt) {
        double g_lo = range.lo - pad * width;
        double g_hi = range.hi + pad * width;
        roots = scan_for_roots(energy, m, params, g_lo, g_hi, grid);
        if (static_cast<int>(roots.size()) == expected) break;
        grid *= 3;
        pad *= 1.5;
    }
    if (static_cast<int>(roots.size()) != expected)
        throw NumericalError("shooting found " + std::to_string(roots.size()) +
                             " eigenvalues, expected " +
                             std::to_string(expected));
    std::sort(roots.begin(), roots.end());

    double cutoff_residual = 0.0;
    for (double g : roots)
        cutoff_residual = std::max(
            cutoff_residual, std::fabs(xi_mismatch(energy, g, m, params, 2.0)));
    if (cutoff_residual > 1e-5)
        throw NumericalError("xi cutoff is not converged");
    return ShootingSpectrum{std::move(roots), cutoff_residual, grid};
}

SolutionProfile eta_profile(double energy, double g, int m,
                            const SystemParams& params, double s_lo,
                            double s_hi, int n_points) {
    check_inputs(energy, g);
    if (!(-1.0 < s_lo && s_lo < s_hi && s_hi < 1.0))
        throw PreconditionError("profile window must lie inside (-1, 1)");
    if (n_points < 2) throw PreconditionError("profile needs >= 2 points");
    OdeParams p{energy, g, params.a, std::abs(m)};
    auto y = frobenius_start(-1, +1, kStepOff, p);
    integrate(y, -1.0 + kStepOff, s_lo, p);

    SolutionProfile prof;
    prof.s.reserve(n_points);
    prof.psi.reserve(n_points);
    prof.dpsi.reserve(n_points);
    double prev = s_lo;
    for (int i = 0; i < n_points; ++i) {
        double s = s_lo + (s_hi - s_lo) * i / (n_points - 1);
        if (i > 0) integrate(y, prev, s, p);
        prof.s.push_back(s);
        prof.psi.push_back(y[0]);
        prof.dpsi.push_back(y[1]);
        prev = s;
    }
    return prof;
}

}  // namespace prolate
