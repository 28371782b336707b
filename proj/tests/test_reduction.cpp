#include <cmath>
#include <random>

#include "doctest.h"
#include "prolate/classical.hpp"
#include "prolate/core.hpp"
#include "prolate/reduction.hpp"

using namespace prolate;

namespace {

/// Random shell state with L.K = 0, |L|^2 + |K|^2 = n^2 and Lz = m.
CartesianState random_state(std::mt19937& rng, double n, double m) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    while (true) {
        const double cap = std::sqrt(n * n - m * m) * 0.9;
        Vec3 L = {cap * unif(rng), cap * unif(rng), m};
        const double L2 = L[0] * L[0] + L[1] * L[1] + L[2] * L[2];
        if (L2 >= n * n - 1e-3) continue;

        Vec3 v = {unif(rng), unif(rng), unif(rng)};
        const double proj = (v[0] * L[0] + v[1] * L[1] + v[2] * L[2]) / L2;
        Vec3 u = {v[0] - proj * L[0], v[1] - proj * L[1], v[2] - proj * L[2]};
        const double ulen = std::hypot(u[0], u[1], u[2]);
        if (ulen < 1e-6) continue;

        const double kappa = std::sqrt(n * n - L2) / ulen;
        return CartesianState{L, {kappa * u[0], kappa * u[1], kappa * u[2]}};
    }
}

Vec3 mat_vec(const Mat3& B, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += B[i][j] * v[j];
    return r;
}

double rho(const ReducedPoint& p, int i) {
    return i == 0 ? p.rho1 : i == 1 ? p.rho2 : p.rho3;
}

ReducedPoint shifted(ReducedPoint p, int i, double h) {
    (i == 0 ? p.rho1 : i == 1 ? p.rho2 : p.rho3) += h;
    return p;
}

}  // namespace

TEST_CASE("reduction reproduces the invariant polynomials") {
    /// Hand-built state: L = (0, 3, 2), K = (sqrt(12), 0, 0), n = 5, m = 2.
    const double kx = std::sqrt(12.0);
    const ReducedPoint p = reduce({{0.0, 3.0, 2.0}, {kx, 0.0, 0.0}}, 5.0, 2.0);
    CHECK(p.rho1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(p.rho2 == doctest::Approx(9.0 - 12.0).epsilon(1e-13));
    CHECK(p.rho3 == doctest::Approx(2.0 * 3.0 * kx).epsilon(1e-13));
    CHECK(std::abs(p.casimir_residual) <= 1e-9);
    CHECK(std::abs(casimir(p)) <= 1e-9 * std::pow(5.0, 4.0));
}

TEST_CASE("reduction rejects off-shell states") {
    CHECK_THROWS_AS(reduce({{0.0, 3.0, 2.0}, {1.0, 1.0, 0.0}}, 5.0, 2.0),
                    PreconditionError);  // L.K != 0
    CHECK_THROWS_AS(reduce({{0.0, 3.0, 2.0}, {2.0, 0.0, 0.0}}, 5.0, 2.0),
                    PreconditionError);  // |L|^2 + |K|^2 != n^2
    CHECK_THROWS_AS(
        reduce({{0.0, 3.0, 2.0}, {std::sqrt(12.0), 0.0, 0.0}}, 5.0, 1.0),
        PreconditionError);  // Lz != m
    CHECK_THROWS_AS(reduce({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}, 0.0, 0.0),
                    PreconditionError);
}

TEST_CASE("invariants do not move under rotations about the z axis") {
    std::mt19937 rng(30u);
    for (int trial = 0; trial < 10; ++trial) {
        const CartesianState s = random_state(rng, 12.0, 5.0);
        const ReducedPoint p = reduce(s, 12.0, 5.0);

        std::uniform_real_distribution<double> ang(0.0, 6.28);
        const double theta = ang(rng);
        const double c = std::cos(theta), sn = std::sin(theta);
        const CartesianState rot{
            {c * s.L[0] - sn * s.L[1], sn * s.L[0] + c * s.L[1], s.L[2]},
            {c * s.K[0] - sn * s.K[1], sn * s.K[0] + c * s.K[1], s.K[2]}};
        const ReducedPoint q = reduce(rot, 12.0, 5.0);

        CHECK(q.rho1 == doctest::Approx(p.rho1).epsilon(1e-11));
        CHECK(q.rho2 == doctest::Approx(p.rho2).epsilon(1e-11).scale(144.0));
        CHECK(q.rho3 == doctest::Approx(p.rho3).epsilon(1e-11).scale(144.0));
    }
}

TEST_CASE("casimir gradient matches finite differences") {
    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const ReducedPoint p{10.0 * unif(rng), 100.0 * unif(rng),
                             100.0 * unif(rng), 12.0, 3.0, 0.0};
        const Vec3 grad = casimir_gradient(p);
        for (int i = 0; i < 3; ++i) {
            const double h = 1e-5 * (1.0 + std::abs(rho(p, i)));
            const double fd =
                (casimir(shifted(p, i, h)) - casimir(shifted(p, i, -h))) /
                (2.0 * h);
            CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6).scale(1e4));
        }
    }
}

TEST_CASE("structure matrix is antisymmetric with the stated brackets") {
    const ReducedPoint p{4.0, -7.0, 2.5, 12.0, 3.0, 0.0};
    const Mat3 B = structure_matrix(p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(B[i][j] == doctest::Approx(-B[j][i]).epsilon(1e-14).scale(1e4));
    CHECK(B[0][1] == doctest::Approx(2.0 * p.rho3).epsilon(1e-14));
    CHECK(B[0][2] == doctest::Approx(-2.0 * p.rho2).epsilon(1e-14));
    CHECK(B[1][2] ==
          doctest::Approx(4.0 * p.rho1 * (144.0 + 9.0 - 16.0)).epsilon(1e-14));
}

TEST_CASE("poisson tensor annihilates the casimir gradient") {
    std::mt19937 rng(32u);
    for (double m : {0.0, 5.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            const ReducedPoint p = reduce(random_state(rng, 12.0, m), 12.0, m);
            const Vec3 v = mat_vec(structure_matrix(p), casimir_gradient(p));
            double scale = 1.0;
            const Mat3 B = structure_matrix(p);
            const Vec3 grad = casimir_gradient(p);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    scale = std::max(scale, std::abs(B[i][j] * grad[j]));
            for (int i = 0; i < 3; ++i) CHECK(std::abs(v[i]) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("bracket satisfies the jacobi identity") {
    /// Cyclic sum of {rho_i, {rho_j, rho_k}} evaluated through finite
    /// differences of the structure matrix entries.
    std::mt19937 rng(33u);
    for (int trial = 0; trial < 10; ++trial) {
        const ReducedPoint p = reduce(random_state(rng, 12.0, 0.0), 12.0, 0.0);
        double total = 0.0;
        double scale = 1.0;
        const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
        for (const auto& idx : cyc) {
            const int i = idx[0], j = idx[1], k = idx[2];
            const Mat3 B = structure_matrix(p);
            for (int l = 0; l < 3; ++l) {
                const double h = 1e-5 * (1.0 + std::abs(rho(p, l)));
                const double d = (structure_matrix(shifted(p, l, h))[j][k] -
                                  structure_matrix(shifted(p, l, -h))[j][k]) /
                                 (2.0 * h);
                total += B[i][l] * d;
                scale = std::max(scale, std::abs(B[i][l] * d));
            }
        }
        CHECK(std::abs(total) <= 1e-8 * scale);
    }
}

TEST_CASE("reduced integral places the singular point at g = 2a") {
    for (double a : {4.0, 36.0, 288.0}) {
        const ReducedPoint tip{12.0, 0.0, 0.0, 12.0, 0.0, 0.0};
        CHECK(reduced_G(tip, SystemParams(a)) ==
              doctest::Approx(2.0 * a).epsilon(1e-13));
    }
}

TEST_CASE("reduced g-range agrees with the classical column range") {
    const SystemParams params(36.0);
    const double E = energy_from_n(12);
    for (double m : {0.0, 5.0}) {
        const GRange red = reduced_g_range(12.0, m, params);
        const Interval cls = column_g_range(E, m, params);
        CHECK(red.lo == doctest::Approx(cls.lo).epsilon(1e-6).scale(100.0));
        CHECK(red.hi == doctest::Approx(cls.hi).epsilon(1e-6).scale(100.0));
        CHECK(red.lo < red.hi);
    }
    CHECK_THROWS_AS(reduced_g_range(12.0, 12.0, SystemParams(36.0)),
                    PreconditionError);
}

TEST_CASE("singular point classification flips exactly at a = n^2") {
    CHECK(classify_singular_point(12.0, SystemParams(4.0)) ==
          SingularPointType::PinchedTorus);
    CHECK(classify_singular_point(12.0, SystemParams(36.0)) ==
          SingularPointType::PinchedTorus);
    CHECK(classify_singular_point(12.0, SystemParams(143.999)) ==
          SingularPointType::PinchedTorus);
    CHECK(classify_singular_point(12.0, SystemParams(144.0)) ==
          SingularPointType::Degenerate);
    CHECK(classify_singular_point(12.0, SystemParams(144.001)) ==
          SingularPointType::EllipticEquilibrium);
    CHECK(classify_singular_point(12.0, SystemParams(288.0)) ==
          SingularPointType::EllipticEquilibrium);

    /// A one-part-in-1e9 move off the bifurcation still lands on the two
    /// regular labels.
    CHECK(classify_singular_point(12.0, SystemParams(144.0 * (1.0 - 1e-9))) ==
          SingularPointType::PinchedTorus);
    CHECK(classify_singular_point(12.0, SystemParams(144.0 * (1.0 + 1e-9))) ==
          SingularPointType::EllipticEquilibrium);
    CHECK_THROWS_AS(classify_singular_point(0.0, SystemParams(1.0)),
                    PreconditionError);
}

TEST_CASE("phase space slice bounds a closed curve with consistent level lines") {
    const SystemParams params(36.0);
    const SliceData slice = phase_space_slice(12.0, 0.0, params, {72.0, 30.0});
    CHECK_FALSE(slice.is_point);
    REQUIRE(slice.upper.size() > 10);
    REQUIRE(slice.upper.size() == slice.lower.size());

    /// Upper and lower branches mirror each other and meet at the ends, and
    /// every boundary sample sits on the casimir surface.
    CHECK(slice.upper.front()[1] ==
          doctest::Approx(slice.lower.front()[1]).epsilon(1e-10).scale(144.0));
    CHECK(slice.upper.back()[1] ==
          doctest::Approx(slice.lower.back()[1]).epsilon(1e-10).scale(144.0));
    for (std::size_t i = 0; i < slice.upper.size(); ++i) {
        CHECK(slice.upper[i][1] ==
              doctest::Approx(-slice.lower[i][1]).epsilon(1e-12).scale(144.0));
        const ReducedPoint p{slice.upper[i][0], slice.upper[i][1], 0.0, 12.0,
                             0.0, 0.0};
        CHECK(std::abs(casimir(p)) <= 1e-8 * std::pow(12.0, 4.0));
    }

    REQUIRE(slice.lines.size() == 2);
    for (const auto& line : slice.lines) {
        CHECK(line.pts.size() > 2);
        for (const auto& pt : line.pts) {
            const ReducedPoint p{pt[0], pt[1], 0.0, 12.0, 0.0, 0.0};
            CHECK(reduced_G(p, params) ==
                  doctest::Approx(line.g).epsilon(1e-9).scale(100.0));
        }
    }

    CHECK(phase_space_slice(12.0, 12.0, params, {}).is_point);
    CHECK_THROWS_AS(phase_space_slice(12.0, 13.0, params, {}), PreconditionError);
}
