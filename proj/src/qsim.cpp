#include "qprot/qsim.hpp"

#include <algorithm>
#include <cmath>

#include "qprot/rng.hpp"

namespace qprot {

StateVector StateVector::zero(int n) {
    if (n < 1) throw Error("state needs at least one qubit");
    if (n > kMaxQubits)
        throw CapacityError("requested " + std::to_string(n) + " qubits, simulator cap is " +
                            std::to_string(kMaxQubits));
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, {0.0, 0.0});
    s.amps[0] = {1.0, 0.0};
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps) acc += std::norm(a);
    return std::sqrt(acc);
}

void apply(StateVector& state, const Gate& gate) {
    const int n = state.n_qubits;
    if (gate.target < 0 || gate.target >= n) throw Error("gate target out of range");

    std::uint64_t cmask = 0, cval = 0;
    for (const auto& c : gate.controls) {
        if (c.qubit < 0 || c.qubit >= n) throw Error("gate control out of range");
        if (c.qubit == gate.target) throw Error("gate control equals target");
        const std::uint64_t bit = std::uint64_t{1} << c.qubit;
        if (cmask & bit) throw Error("duplicate control qubit");
        cmask |= bit;
        if (c.value) cval |= bit;
    }

    using cd = std::complex<double>;
    cd u00, u01, u10, u11;
    const double half = gate.angle / 2.0;
    switch (gate.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            u00 = s; u01 = s; u10 = s; u11 = -s;
            break;
        }
        case GateKind::X:
            u00 = 0.0; u01 = 1.0; u10 = 1.0; u11 = 0.0;
            break;
        case GateKind::Rx:
            u00 = std::cos(half); u01 = cd(0.0, -std::sin(half));
            u10 = cd(0.0, -std::sin(half)); u11 = std::cos(half);
            break;
        case GateKind::Ry:
            u00 = std::cos(half); u01 = -std::sin(half);
            u10 = std::sin(half); u11 = std::cos(half);
            break;
        case GateKind::Rz:
            u00 = std::polar(1.0, -half); u01 = 0.0;
            u10 = 0.0; u11 = std::polar(1.0, half);
            break;
    }

    const std::uint64_t tbit = std::uint64_t{1} << gate.target;
    const std::uint64_t size = state.amps.size();
    for (std::uint64_t k = 0; k < size; ++k) {
        if (k & tbit) continue;
        if ((k & cmask) != cval) continue;
        const cd a0 = state.amps[k];
        const cd a1 = state.amps[k | tbit];
        state.amps[k] = u00 * a0 + u01 * a1;
        state.amps[k | tbit] = u10 * a0 + u11 * a1;
    }
}

StateVector run(const Circuit& circuit, StateVector initial) {
    if (circuit.n_qubits != initial.n_qubits) throw Error("circuit/state qubit count mismatch");
    for (const auto& g : circuit.gates) apply(initial, g);
    return initial;
}

std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state, std::uint64_t shots,
                                              std::mt19937_64& rng) {
    std::vector<double> cum(state.amps.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < state.amps.size(); ++k) {
        acc += std::norm(state.amps[k]);
        cum[k] = acc;
    }
    const double total = acc;  // 1 up to float dust

    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::uint64_t k = it == cum.end() ? cum.size() - 1
                                                : static_cast<std::uint64_t>(it - cum.begin());
        counts[k] += 1;
    }
    return counts;
}

double expectation_diagonal(const StateVector& state, std::span<const double> diag) {
    if (diag.size() != state.amps.size()) throw Error("diagonal length mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < diag.size(); ++k) acc += diag[k] * std::norm(state.amps[k]);
    return acc;
}

}  // namespace qprot
