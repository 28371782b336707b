// Shared types for the prolate spheroidal treatment of the hydrogen atom:
// system parameters, quantum numbers, and the joint spectrum of the three
// commuting operators (H, G, Lz).
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolate {

// Thrown when an argument violates a documented precondition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an algorithm fails to reach its numerical contract
// (ambiguous lattice snap, infeasible loop, missed bracket, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Half the focal separation of the prolate spheroidal coordinate system.
// The nucleus sits at the focus +a on the z axis.
struct SystemParams {
    double a;

    explicit SystemParams(double a_);
};

// Bound-state energy of the n-th hydrogen shell, E = -1/(2 n^2).
double energy_from_n(int n);

// Labels of a joint eigenstate within shell n: magnetic number m and the
// index k of the eigenvalue g within the column (ascending order).
struct QuantumNumbers {
    int n;
    int m;
    int k;

    QuantumNumbers(int n_, int m_, int k_);
};

// One point of the joint spectrum.
struct JointPoint {
    double energy;
    double g;
    int m;
};

// Joint spectrum of one shell: for each m in [-(n-1), n-1] the column of
// n-|m| eigenvalues of G, sorted ascending.  Total point count is n^2.
struct JointSpectrum {
    int n;
    SystemParams params;
    double energy;
    std::map<int, std::vector<double>> columns;

    const std::vector<double>& column(int m) const;
    std::size_t total_states() const;
    std::vector<JointPoint> points() const;
};

}  // namespace prolate
