#include "prolate/classical.hpp"

#include <gsl/gsl_poly.h>

#include <algorithm>
#include <cmath>

namespace prolate {

namespace {

double coeff_scale(const SeparationQuartic& P) {
    double s = 0.0;
    for (double c : P.coeff) s = std::max(s, std::fabs(c));
    return std::max(1.0, s);
}

}  // namespace

double SeparationQuartic::eval(double s) const {
    double v = coeff[0];
    for (int i = 1; i < 5; ++i) v = v * s + coeff[i];
    return v;
}

double SeparationQuartic::deriv(double s) const {
    double v = 4.0 * coeff[0];
    for (int i = 1; i < 4; ++i) v = v * s + double(4 - i) * coeff[i];
    return v;
}

SeparationQuartic separation_quartic(double E, double g, double lz,
                                     const SystemParams& params) {
    if (!std::isfinite(E) || E >= 0.0)
        throw PreconditionError("separation_quartic: bound motion requires E < 0");
    if (!std::isfinite(g) || !std::isfinite(lz))
        throw PreconditionError("separation_quartic: g and lz must be finite");
    const double a = params.a;
    const double w = 2.0 * a * a * E;
    SeparationQuartic P;
    // (w (s^2-1) + 2 a s - g)(s^2-1) - lz^2, expanded in descending powers.
    P.coeff = {w, 2.0 * a, -(g + 2.0 * w), -2.0 * a, g + w - lz * lz};
    P.E = E;
    P.g = g;
    P.lz = lz;
    P.a = a;
    return P;
}

std::vector<QuarticRoot> real_roots(const SeparationQuartic& P) {
    std::vector<double> xs;

    if (P.lz == 0.0) {
        // P factors as Q(s)(s^2 - 1) with Q quadratic; use it exactly.
        const double qa = 2.0 * P.a * P.a * P.E;
        const double qb = 2.0 * P.a;
        const double qc = -(P.g + qa);
        const double disc = qb * qb - 4.0 * qa * qc;
        xs = {-1.0, 1.0};
        if (disc >= 0.0) {
            const double r = std::sqrt(disc);
            const double q = -0.5 * (qb + (qb >= 0.0 ? r : -r));
            xs.push_back(q / qa);
            if (q != 0.0) xs.push_back(qc / q);
        } else if (disc > -1e-12 * std::max(1.0, qb * qb)) {
            xs.push_back(-qb / (2.0 * qa));
            xs.push_back(-qb / (2.0 * qa));
        }
    } else {
        double asc[5] = {P.coeff[4], P.coeff[3], P.coeff[2], P.coeff[1],
                         P.coeff[0]};
        double z[8];
        gsl_poly_complex_workspace* w = gsl_poly_complex_workspace_alloc(5);
        const int status = gsl_poly_complex_solve(asc, 5, w, z);
        gsl_poly_complex_workspace_free(w);
        if (status != 0)
            throw NumericalError("real_roots: companion-matrix QR failed");
        for (int i = 0; i < 4; ++i) {
            const double re = z[2 * i], im = z[2 * i + 1];
            if (std::fabs(im) <= 1e-7 * std::max(1.0, std::fabs(re)))
                xs.push_back(re);
        }
        // Polish simple roots by bisection inside a tight bracket.
        for (double& r : xs) {
            const double h = 1e-7 * (1.0 + std::fabs(r));
            double lo = r - h, hi = r + h;
            double flo = P.eval(lo), fhi = P.eval(hi);
            if (flo == 0.0 || fhi == 0.0) continue;
            if ((flo > 0.0) == (fhi > 0.0)) continue;  // double root: keep QR value
            while (hi - lo > 1e-13 * (1.0 + std::fabs(r))) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = P.eval(mid);
                if (fmid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fmid > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            r = 0.5 * (lo + hi);
        }
    }

    std::sort(xs.begin(), xs.end());
    std::vector<QuarticRoot> out;
    for (std::size_t i = 0; i < xs.size();) {
        std::size_t j = i + 1;
        while (j < xs.size() &&
               xs[j] - xs[j - 1] < 1e-9 * std::max(1.0, std::fabs(xs[j])))
            ++j;
        double pos = 0.0;
        for (std::size_t k = i; k < j; ++k) pos += xs[k];
        out.push_back(QuarticRoot{pos / double(j - i), int(j - i)});
        i = j;
    }
    return out;
}

double discriminant(const SeparationQuartic& P) {
    const double a = P.coeff[0], b = P.coeff[1], c = P.coeff[2], d = P.coeff[3],
                 e = P.coeff[4];
    return 256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e -
           128 * a * a * c * c * e * e + 144 * a * a * c * d * d * e -
           27 * a * a * d * d * d * d + 144 * a * b * b * c * e * e -
           6 * a * b * b * d * d * e - 80 * a * b * c * c * d * e +
           18 * a * b * c * d * d * d + 16 * a * c * c * c * c * e -
           4 * a * c * c * c * d * d - 27 * b * b * b * b * e * e +
           18 * b * b * b * c * d * e - 4 * b * b * b * d * d * d -
           4 * b * b * c * c * c * e + b * b * c * c * d * d;
}

namespace {

// Maximal {P >= 0} intervals within [lo, hi_bound], built from sign tests
// between consecutive roots.
std::vector<Interval> allowed_intervals(const SeparationQuartic& P, double lo,
                                        double hi_bound,
                                        const std::vector<QuarticRoot>& roots) {
    std::vector<double> bps{lo};
    for (const auto& r : roots)
        if (r.s > lo + 1e-12 && r.s < hi_bound - 1e-12) bps.push_back(r.s);
    bps.push_back(hi_bound);

    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double mid = 0.5 * (bps[i] + bps[i + 1]);
        if (P.eval(mid) > 0.0) {
            if (!out.empty() && std::fabs(out.back().hi - bps[i]) < 1e-12)
                out.back().hi = bps[i + 1];  // double root inside: one interval
            else
                out.push_back(Interval{bps[i], bps[i + 1]});
        }
    }
    return out;
}

bool contains(const std::vector<Interval>& iv, double s) {
    for (const auto& v : iv)
        if (s >= v.lo - 1e-9 && s <= v.hi + 1e-9) return true;
    return false;
}

}  // namespace

TurningPoints turning_points(const SeparationQuartic& P) {
    const auto roots = real_roots(P);
    TurningPoints tp;

    // The xi side is unbounded above only formally: the leading coefficient
    // 2 a^2 E is negative, so the allowed set ends at the largest root.
    double xi_cap = 2.0;
    for (const auto& r : roots) xi_cap = std::max(xi_cap, r.s + 1.0);

    tp.eta = allowed_intervals(P, -1.0, 1.0, roots);
    tp.xi = allowed_intervals(P, 1.0, xi_cap, roots);

    for (const auto& r : roots) {
        if (r.multiplicity < 2) continue;
        if (r.s >= -1.0 - 1e-9 && r.s <= 1.0 + 1e-9) {
            tp.eta_degenerate = true;
            if (!contains(tp.eta, r.s))
                tp.eta.push_back(Interval{r.s, r.s});
        }
        if (r.s >= 1.0 - 1e-9) {
            tp.xi_degenerate = true;
            if (!contains(tp.xi, r.s))
                tp.xi.push_back(Interval{r.s, r.s});
        }
    }
    std::sort(tp.eta.begin(), tp.eta.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::sort(tp.xi.begin(), tp.xi.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });

    if (!tp.eta.empty() && !tp.xi.empty() &&
        std::fabs(tp.eta.back().hi - 1.0) < 1e-9 &&
        std::fabs(tp.xi.front().lo - 1.0) < 1e-9)
        tp.shared_endpoint = true;
    return tp;
}

double momentum(double s, const SeparationQuartic& P) {
    const double den = std::fabs(s * s - 1.0);
    if (den < 1e-12)
        throw PreconditionError("momentum: coordinate singularity at |s| = 1");
    double v = P.eval(s);
    if (v < -1e-12 * coeff_scale(P))
        throw PreconditionError("momentum: classically forbidden point");
    if (v < 0.0) v = 0.0;
    return std::sqrt(v) / den;
}

std::optional<CriticalPoint> critical_curve(double E, const SystemParams& params,
                                            double s0) {
    if (!std::isfinite(E) || E >= 0.0)
        throw PreconditionError("critical_curve: requires E < 0");
    if (std::fabs(s0) < 1e-12 || std::fabs(std::fabs(s0) - 1.0) < 1e-12)
        throw PreconditionError(
            "critical_curve: s0 in {0, +-1} handled by dedicated limits");
    const double a = params.a;
    const double w = 2.0 * a * a * E;
    // P'(s0) = 0 fixes Q(s0); P(s0) = 0 then fixes lz^2.
    const double Q0 = -(w * s0 + a) * (s0 * s0 - 1.0) / s0;
    const double g = w * (s0 * s0 - 1.0) + 2.0 * a * s0 - Q0;
    const double lz2 = Q0 * (s0 * s0 - 1.0);
    if (lz2 < 0.0) return std::nullopt;
    return CriticalPoint{std::sqrt(lz2), g};
}

IsolatedValue isolated_critical_value(double n, const SystemParams& params) {
    if (!(n > 0.0))
        throw PreconditionError("isolated_critical_value: n must be > 0");
    const double a = params.a;
    IsolatedValue iv;
    iv.value = CriticalPoint{0.0, 2.0 * a};
    if (a < n * n)
        iv.status = IsolatedValue::Status::present;
    else if (a > n * n)
        iv.status = IsolatedValue::Status::absent;
    else
        iv.status = IsolatedValue::Status::degenerate;
    return iv;
}

namespace {

// lz on the critical curve as a function of the double-root location.
double critical_lz(double E, const SystemParams& params, double s0) {
    auto cp = critical_curve(E, params, s0);
    return cp ? cp->lz : -1.0;
}

// First s0 past `from` (moving by growing steps toward `dir`) where the
// critical lz crosses the target; refined by bisection.
double solve_branch(double E, const SystemParams& params, double from,
                    double target, double dir, double limit) {
    double step = 1e-9 * std::max(1.0, std::fabs(from));
    double prev = from + dir * step;
    double fprev = critical_lz(E, params, prev) - target;
    double cur = prev;
    for (int it = 0; it < 400; ++it) {
        step *= 1.35;
        cur = prev + dir * step;
        if (dir > 0.0 ? cur >= limit : cur <= limit) cur = limit - dir * 1e-12;
        const double fcur = critical_lz(E, params, cur) - target;
        if ((fprev <= 0.0 && fcur >= 0.0) || (fprev >= 0.0 && fcur <= 0.0)) {
            double lo = prev, hi = cur, flo = fprev;
            for (int j = 0; j < 90; ++j) {
                const double mid = 0.5 * (lo + hi);
                const double fm = critical_lz(E, params, mid) - target;
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if (hi - lo < 1e-14 * std::max(1.0, std::fabs(mid))) break;
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
        fprev = fcur;
        if (cur == limit - dir * 1e-12) break;
    }
    throw NumericalError("column_g_range: no crossing on critical branch");
}

}  // namespace

Interval column_g_range(double E, double lz, const SystemParams& params) {
    if (!std::isfinite(E) || E >= 0.0)
        throw PreconditionError("column_g_range: requires E < 0");
    const double a = params.a;
    const double neff = 1.0 / std::sqrt(-2.0 * E);
    const double alz = std::fabs(lz);
    if (alz >= neff)
        throw PreconditionError("column_g_range: |lz| must be below 1/sqrt(-2E)");

    double glo, ghi;
    if (alz == 0.0) {
        glo = -2.0 * a;
        ghi = neff * neff + a * a / (neff * neff);
    } else {
        // Lower edge: double root in the eta range, s0 in (-1, 0).
        const double s_lo = solve_branch(E, params, -1.0, alz, +1.0, 0.0);
        glo = critical_curve(E, params, s_lo)->g;
        // Upper edge: branch starting at s* = -1/(2aE) where lz = 0.
        const double sstar = -1.0 / (2.0 * a * E);
        const double s_hi =
            solve_branch(E, params, sstar, alz, +1.0, 1e6 * std::max(1.0, sstar));
        ghi = critical_curve(E, params, s_hi)->g;
    }
    if (!(glo < ghi))
        throw NumericalError("column_g_range: degenerate classical range");
    return Interval{glo, ghi};
}

EllipseFamilyMember critical_ellipse_family(double E, const SystemParams& params,
                                            double t) {
    if (!std::isfinite(E) || E >= 0.0)
        throw PreconditionError("critical_ellipse_family: requires E < 0");
    const double a = params.a;
    if (E < -1.0 / (2.0 * a))
        throw PreconditionError(
            "critical_ellipse_family: no family for E < -1/(2a)");
    EllipseFamilyMember mem;
    mem.t = t;
    const double d = -1.0 / E - 2.0 * a;
    mem.primary_focus = {0.0, 0.0, a};
    mem.second_focus = {d * std::sin(t), 0.0, -a + d * std::cos(t)};
    mem.semi_major = -0.5 / E;
    return mem;
}

std::array<double, 2> EllipseFamilyMember::point_at(double theta) const {
    const double f1x = primary_focus[0], f1z = primary_focus[2];
    const double f2x = second_focus[0], f2z = second_focus[2];
    const double cx = 0.5 * (f1x + f2x), cz = 0.5 * (f1z + f2z);
    double ux = f1x - f2x, uz = f1z - f2z;
    const double c = 0.5 * std::hypot(ux, uz);
    if (c > 0.0) {
        const double inv = 0.5 / c;
        ux *= inv;
        uz *= inv;
    } else {
        ux = 0.0;
        uz = 1.0;
    }
    const double b = std::sqrt(std::max(0.0, semi_major * semi_major - c * c));
    return {cx + semi_major * std::cos(theta) * ux - b * std::sin(theta) * uz,
            cz + semi_major * std::cos(theta) * uz + b * std::sin(theta) * ux};
}

ProlateCoords prolate_from_cartesian(const std::array<double, 3>& r,
                                     const SystemParams& params) {
    const double a = params.a;
    const double rp = std::hypot(r[0], r[1], r[2] - a);
    const double rm = std::hypot(r[0], r[1], r[2] + a);
    ProlateCoords pc;
    pc.xi = std::max(1.0, (rm + rp) / (2.0 * a));
    pc.eta = std::clamp((rm - rp) / (2.0 * a), -1.0, 1.0);
    pc.phi = (r[0] == 0.0 && r[1] == 0.0) ? 0.0 : std::atan2(r[1], r[0]);
    if (pc.phi < 0.0) pc.phi += 2.0 * std::acos(-1.0);
    return pc;
}

}  // namespace prolate
