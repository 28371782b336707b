#include "prolate/core.hpp"

#include <cmath>
#include <cstdlib>

namespace prolate {

SystemParams::SystemParams(double a_) : a(a_) {
    if (!std::isfinite(a) || a <= 0.0)
        throw PreconditionError("SystemParams: a must be finite and > 0, got " +
                                std::to_string(a_));
}

double energy_from_n(int n) {
    if (n <= 0) throw PreconditionError("energy_from_n: n must be >= 1");
    return -1.0 / (2.0 * double(n) * double(n));
}

QuantumNumbers::QuantumNumbers(int n_, int m_, int k_) : n(n_), m(m_), k(k_) {
    if (n < 1) throw PreconditionError("QuantumNumbers: n must be >= 1");
    if (std::abs(m) > n - 1)
        throw PreconditionError("QuantumNumbers: |m| must be <= n-1");
    if (k < 0 || k > n - std::abs(m) - 1)
        throw PreconditionError("QuantumNumbers: k out of range for column");
}

const std::vector<double>& JointSpectrum::column(int m) const {
    auto it = columns.find(m);
    if (it == columns.end())
        throw PreconditionError("JointSpectrum: no column for m = " +
                                std::to_string(m));
    return it->second;
}

std::size_t JointSpectrum::total_states() const {
    std::size_t c = 0;
    for (const auto& [m, col] : columns) c += col.size();
    return c;
}

std::vector<JointPoint> JointSpectrum::points() const {
    std::vector<JointPoint> out;
    out.reserve(total_states());
    for (const auto& [m, col] : columns)
        for (double g : col) out.push_back(JointPoint{energy, g, m});
    return out;
}

}  // namespace prolate
