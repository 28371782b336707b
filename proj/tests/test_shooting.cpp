#include <cmath>
#include <vector>

#include "doctest.h"
#include "prolate/core.hpp"
#include "prolate/interbasis.hpp"
#include "prolate/shooting.hpp"

using namespace prolate;

TEST_CASE("shooting reproduces the closed-form two-state column") {
    const SystemParams params(1.0);
    const ShootingSpectrum sp = shooting_spectrum(2, 0, params);
    REQUIRE(sp.g.size() == 2);
    CHECK(std::abs(sp.g[0] - (1.0 - std::sqrt(2.0))) <= 1e-6);
    CHECK(std::abs(sp.g[1] - (1.0 + std::sqrt(2.0))) <= 1e-6);
    CHECK(sp.cutoff_residual < 1e-6);
    CHECK(sp.grid_size > 0);
}

TEST_CASE("shooting finds the trivial one-state columns") {
    const ShootingSpectrum top = shooting_spectrum(2, 1, SystemParams(0.7));
    REQUIRE(top.g.size() == 1);
    CHECK(std::abs(top.g[0] - 2.0) <= 1e-6);

    const ShootingSpectrum ground = shooting_spectrum(1, 0, SystemParams(1.3));
    REQUIRE(ground.g.size() == 1);
    CHECK(std::abs(ground.g[0]) <= 1e-6);
}

TEST_CASE("shooting agrees with the algebraic spectrum across a shell") {
    const SystemParams params(2.0);
    for (int m = -2; m <= 2; ++m) {
        const ShootingSpectrum sp = shooting_spectrum(3, m, params);
        const auto exact = eigenvalues(build_matrix(3, m, params));
        REQUIRE(sp.g.size() == exact.size());
        for (std::size_t i = 0; i < exact.size(); ++i) {
            CHECK(std::abs(sp.g[i] - exact[i]) <= 1e-6);
            if (i > 0) CHECK(sp.g[i - 1] < sp.g[i]);
        }
    }
}

TEST_CASE("angular mismatch changes sign across an eigenvalue") {
    const SystemParams params(1.0);
    const double E = energy_from_n(2);
    const double root = 1.0 + std::sqrt(2.0);
    const double lo = eta_mismatch(E, root - 0.4, 0, params);
    const double hi = eta_mismatch(E, root + 0.4, 0, params);
    CHECK(lo * hi < 0.0);
}

TEST_CASE("radial mismatch is insensitive to the asymptotic cutoff") {
    const SystemParams params(1.0);
    const double E = energy_from_n(2);
    const double root = 1.0 + std::sqrt(2.0);
    CHECK(std::abs(xi_mismatch(E, root, 0, params, 1.0)) < 1e-5);
    CHECK(std::abs(xi_mismatch(E, root, 0, params, 2.0)) < 1e-5);
}

TEST_CASE("angular profile satisfies the separated equation") {
    /// Collocation residual of the profile under the equation
    ///   (s^2-1) psi'' + 2 s psi' + [2a^2E(s^2-1) + 2as - g - m^2/(s^2-1)] psi = 0
    /// with psi'' taken from a fourth-order difference of the returned psi'.
    const SystemParams params(1.0);
    const double E = energy_from_n(2);
    const double a = params.a;

    for (int m : {0, 1}) {
        const double g = m == 0 ? 1.0 + std::sqrt(2.0) : 2.0;
        const int npts = 801;
        const SolutionProfile prof = eta_profile(E, g, m, params, -0.9, 0.9, npts);
        REQUIRE(prof.s.size() == static_cast<std::size_t>(npts));
        REQUIRE(prof.psi.size() == prof.s.size());
        REQUIRE(prof.dpsi.size() == prof.s.size());

        const double h = prof.s[1] - prof.s[0];
        double worst = 0.0;
        double amp = 0.0;
        for (double v : prof.psi) amp = std::max(amp, std::abs(v));
        REQUIRE(amp > 0.0);

        for (int i = 2; i < npts - 2; ++i) {
            const double s = prof.s[i];
            const double ddpsi =
                (-prof.dpsi[i + 2] + 8.0 * prof.dpsi[i + 1] -
                 8.0 * prof.dpsi[i - 1] + prof.dpsi[i - 2]) /
                (12.0 * h);
            const double q = 2.0 * a * a * E * (s * s - 1.0) + 2.0 * a * s - g -
                             double(m) * m / (s * s - 1.0);
            const double res =
                (s * s - 1.0) * ddpsi + 2.0 * s * prof.dpsi[i] + q * prof.psi[i];
            const double scale = std::abs((s * s - 1.0) * ddpsi) +
                                 std::abs(2.0 * s * prof.dpsi[i]) +
                                 std::abs(q * prof.psi[i]) + amp;
            worst = std::max(worst, std::abs(res) / scale);
        }
        CHECK(worst <= 1e-6);

        /// The reported slope must also be the derivative of the reported
        /// values, checked with the same stencil.
        double damp = 0.0;
        for (double v : prof.dpsi) damp = std::max(damp, std::abs(v));
        double slope_err = 0.0;
        for (int i = 2; i < npts - 2; ++i) {
            const double fd =
                (-prof.psi[i + 2] + 8.0 * prof.psi[i + 1] -
                 8.0 * prof.psi[i - 1] + prof.psi[i - 2]) /
                (12.0 * h);
            slope_err = std::max(slope_err, std::abs(fd - prof.dpsi[i]));
        }
        CHECK(slope_err <= 1e-7 * (amp + damp));
    }
}

TEST_CASE("shooting validates its inputs") {
    const SystemParams params(1.0);
    CHECK_THROWS_AS(shooting_spectrum(0, 0, params), PreconditionError);
    CHECK_THROWS_AS(shooting_spectrum(3, 3, params), PreconditionError);
    CHECK_THROWS_AS(eta_mismatch(0.5, 1.0, 0, params), PreconditionError);
    CHECK_THROWS_AS(xi_mismatch(-0.125, 1.0, 0, params, 0.5), PreconditionError);
    CHECK_THROWS_AS(eta_profile(-0.125, 1.0, 0, params, -1.5, 0.9, 100),
                    PreconditionError);
    CHECK_THROWS_AS(eta_profile(-0.125, 1.0, 0, params, -0.9, 0.9, 1),
                    PreconditionError);
}
