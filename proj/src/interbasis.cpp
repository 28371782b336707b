#include "prolate/interbasis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prolate {

TridiagonalMatrix build_matrix(int n, int m, const SystemParams& params) {
    if (n < 1) throw PreconditionError("build_matrix: n must be >= 1");
    const int am = std::abs(m);
    if (am > n - 1) throw PreconditionError("build_matrix: |m| must be <= n-1");

    const int dim = n - am;
    TridiagonalMatrix A;
    A.diag.resize(dim);
    A.offdiag.resize(dim > 0 ? dim - 1 : 0);
    for (int i = 0; i < dim; ++i) {
        const double l = double(am + i);
        A.diag[i] = l * (l + 1.0);
    }
    // Coupling between l and l+1, evaluated at the larger label lam = l+1:
    // (a/n) sqrt((n^2 - lam^2)(lam^2 - m^2) / (lam^2 - 1/4)).
    for (int i = 0; i + 1 < dim; ++i) {
        const double lam = double(am + i + 1);
        const double num = (double(n) * n - lam * lam) * (lam * lam - double(m) * m);
        A.offdiag[i] = params.a / double(n) * std::sqrt(num / (lam * lam - 0.25));
    }
    return A;
}

int sturm_count_below(const TridiagonalMatrix& A, double x) {
    // LDL^T pivot recurrence; the number of negative pivots equals the
    // number of eigenvalues below x.
    const std::size_t nd = A.size();
    constexpr double pivmin = 1e-300;
    int cnt = 0;
    double q = A.diag[0] - x;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < nd; ++i) {
        if (std::fabs(q) < pivmin) q = -pivmin;
        const double e = A.offdiag[i - 1];
        q = (A.diag[i] - x) - e * e / q;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

namespace {

// Characteristic polynomial p(x) = det(A - x I) and its derivative via the
// three-term recurrence, with rescaling whenever the magnitude leaves
// [1e-150, 1e150].
void charpoly(const TridiagonalMatrix& A, double x, double& p, double& dp) {
    const std::size_t nd = A.size();
    double pm1 = 1.0, dpm1 = 0.0;
    double pc = A.diag[0] - x, dpc = -1.0;
    for (std::size_t i = 1; i < nd; ++i) {
        const double e2 = A.offdiag[i - 1] * A.offdiag[i - 1];
        const double d = A.diag[i] - x;
        double pn = d * pc - e2 * pm1;
        double dpn = -pc + d * dpc - e2 * dpm1;
        pm1 = pc;
        dpm1 = dpc;
        pc = pn;
        dpc = dpn;
        const double mag = std::fabs(pc);
        if (mag > 1e150 || (mag != 0.0 && mag < 1e-150)) {
            const double s = std::ldexp(1.0, -std::ilogb(pc));
            pc *= s;
            dpc *= s;
            pm1 *= s;
            dpm1 *= s;
        }
    }
    p = pc;
    dp = dpc;
}

}  // namespace

std::vector<double> eigenvalues(const TridiagonalMatrix& A) {
    const std::size_t nd = A.size();
    if (nd == 0) throw PreconditionError("eigenvalues: empty matrix");
    if (nd == 1) return {A.diag[0]};

    // Gershgorin bounds.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < nd; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(A.offdiag[i - 1]);
        if (i + 1 < nd) r += std::fabs(A.offdiag[i]);
        lo = std::min(lo, A.diag[i] - r);
        hi = std::max(hi, A.diag[i] + r);
    }
    const double span = hi - lo;
    lo -= 1e-12 * (1.0 + std::fabs(lo));
    hi += 1e-12 * (1.0 + std::fabs(hi));

    std::vector<double> ev(nd);
    for (std::size_t k = 0; k < nd; ++k) {
        double a = lo, b = hi;
        // Bisection until the bracket certifies eigenvalue k to tolerance.
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            const double tol = 1e-13 * std::max(1.0, std::fabs(mid));
            if (b - a <= tol || mid == a || mid == b) break;
            if (sturm_count_below(A, mid) >= int(k) + 1)
                b = mid;
            else
                a = mid;
        }
        double x = 0.5 * (a + b);
        // Newton polish; keep iterates inside the certified bracket.
        for (int it = 0; it < 4; ++it) {
            double p, dp;
            charpoly(A, x, p, dp);
            if (dp == 0.0) break;
            const double step = p / dp;
            const double xn = x - step;
            if (!(xn >= a - 1e-10 * span && xn <= b + 1e-10 * span)) break;
            x = xn;
            if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(x))) break;
        }
        ev[k] = x;
    }

    // Certify order and count with the Sturm sequence.
    for (std::size_t k = 0; k < nd; ++k) {
        const double del = 1e-11 * std::max(1.0, std::fabs(ev[k]));
        if (sturm_count_below(A, ev[k] - del) > int(k) ||
            sturm_count_below(A, ev[k] + del) < int(k) + 1)
            throw NumericalError("eigenvalues: Sturm certification failed");
        if (k > 0 && !(ev[k] >= ev[k - 1]))
            throw NumericalError("eigenvalues: ordering violated");
    }
    return ev;
}

JointSpectrum joint_spectrum(int n, const SystemParams& params) {
    if (n < 1) throw PreconditionError("joint_spectrum: n must be >= 1");
    JointSpectrum s{n, params, energy_from_n(n), {}};
    // Entries depend on m only through m^2, so the m and -m columns are one
    // computation.
    for (int m = 0; m <= n - 1; ++m) {
        auto ev = eigenvalues(build_matrix(n, m, params));
        if (m > 0) s.columns[-m] = ev;
        s.columns[m] = std::move(ev);
    }
    return s;
}

}  // namespace prolate
