#include <cmath>

#include "doctest.h"
#include "prolate/core.hpp"
#include "prolate/interbasis.hpp"

using namespace prolate;

TEST_CASE("system parameters validate the focal distance") {
    CHECK_NOTHROW(SystemParams(1.0));
    CHECK_NOTHROW(SystemParams(1e-12));
    CHECK_THROWS_AS(SystemParams(0.0), PreconditionError);
    CHECK_THROWS_AS(SystemParams(-3.0), PreconditionError);
    CHECK_THROWS_AS(SystemParams(std::nan("")), PreconditionError);
    CHECK_THROWS_AS(SystemParams(std::numeric_limits<double>::infinity()),
                    PreconditionError);
}

TEST_CASE("shell energy is -1/(2 n^2)") {
    CHECK(energy_from_n(1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(energy_from_n(2) == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(energy_from_n(12) == doctest::Approx(-1.0 / 288.0).epsilon(1e-15));
    CHECK_THROWS_AS(energy_from_n(0), PreconditionError);
    CHECK_THROWS_AS(energy_from_n(-1), PreconditionError);
}

TEST_CASE("quantum number labels validate their ranges") {
    CHECK_NOTHROW(QuantumNumbers(3, -2, 0));
    CHECK_NOTHROW(QuantumNumbers(3, 0, 2));
    CHECK_THROWS_AS(QuantumNumbers(0, 0, 0), PreconditionError);
    CHECK_THROWS_AS(QuantumNumbers(3, 3, 0), PreconditionError);
    CHECK_THROWS_AS(QuantumNumbers(3, -3, 0), PreconditionError);
    CHECK_THROWS_AS(QuantumNumbers(3, 0, 3), PreconditionError);
    CHECK_THROWS_AS(QuantumNumbers(3, 2, 1), PreconditionError);
    CHECK_THROWS_AS(QuantumNumbers(3, 0, -1), PreconditionError);
}

TEST_CASE("joint spectrum containers expose the shell structure") {
    const SystemParams params(2.0);
    const JointSpectrum spec = joint_spectrum(3, params);

    CHECK(spec.n == 3);
    CHECK(spec.energy == doctest::Approx(-1.0 / 18.0).epsilon(1e-15));
    CHECK(spec.total_states() == 9);
    CHECK(spec.columns.size() == 5);

    /// Column m holds n - |m| values, sorted ascending.
    for (int m = -2; m <= 2; ++m) {
        const auto& col = spec.column(m);
        CHECK(col.size() == static_cast<std::size_t>(3 - std::abs(m)));
        for (std::size_t i = 1; i < col.size(); ++i) CHECK(col[i - 1] < col[i]);
    }
    CHECK_THROWS_AS(spec.column(3), PreconditionError);
    CHECK_THROWS_AS(spec.column(-3), PreconditionError);

    const auto pts = spec.points();
    CHECK(pts.size() == 9);
    for (const auto& p : pts) CHECK(p.energy == spec.energy);
}

TEST_CASE("columns at +-m are identical") {
    const JointSpectrum spec = joint_spectrum(5, SystemParams(1.7));
    for (int m = 1; m <= 4; ++m) {
        const auto& plus = spec.column(m);
        const auto& minus = spec.column(-m);
        REQUIRE(plus.size() == minus.size());
        for (std::size_t i = 0; i < plus.size(); ++i) CHECK(plus[i] == minus[i]);
    }
}

TEST_CASE("state count is n squared") {
    for (int n : {1, 2, 3, 7, 12})
        CHECK(joint_spectrum(n, SystemParams(0.8)).total_states() ==
              static_cast<std::size_t>(n) * n);
}
