#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "qprot/errors.hpp"

namespace qprot {

// Dense statevector over n qubits. Qubit 0 is the least significant bit of
// the basis index.
struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps;

    static constexpr int kMaxQubits = 26;

    static StateVector zero(int n);  // |0...0>; throws CapacityError above the cap
    double norm() const;
};

enum class GateKind { H, X, Rx, Ry, Rz };

struct ControlBit {
    int qubit;
    bool value;  // required control state (1 or 0)
};

struct Gate {
    GateKind kind;
    int target;
    double angle = 0.0;
    std::vector<ControlBit> controls;

    static Gate h(int target) { return {GateKind::H, target}; }
    static Gate x(int target) { return {GateKind::X, target}; }
    static Gate rx(int target, double angle) { return {GateKind::Rx, target, angle}; }
    static Gate ry(int target, double angle) { return {GateKind::Ry, target, angle}; }
    static Gate rz(int target, double angle) { return {GateKind::Rz, target, angle}; }

    Gate with_controls(std::vector<ControlBit> c) const {
        Gate g = *this;
        g.controls = std::move(c);
        return g;
    }
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    explicit Circuit(int n = 0) : n_qubits(n) {}
    void append(Gate g) { gates.push_back(std::move(g)); }
    std::size_t size() const { return gates.size(); }
};

// In-place unitary action. Controlled gates touch only basis states matching
// the control pattern.
void apply(StateVector& state, const Gate& gate);

StateVector run(const Circuit& circuit, StateVector initial);

// `shots` i.i.d. draws from |amps|^2; deterministic under a fixed rng state.
std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state, std::uint64_t shots,
                                              std::mt19937_64& rng);

// sum_k diag[k] * |amps[k]|^2
double expectation_diagonal(const StateVector& state, std::span<const double> diag);

}  // namespace qprot
