#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qprot/occurrence.hpp"
#include "qprot/qsim.hpp"

namespace qprot {

// Rotation schedule for the cake state-preparation walk over one probability
// row. The circuit acts on n_value_qubits amino qubits plus one auxiliary
// qubit that carries the residual mass.
struct CakePlan {
    int n_value_qubits = 5;
    std::vector<double> thetas;        // 2^n_value_qubits entries
    std::vector<std::size_t> active;   // indices with nonzero mass, ascending
    double residual = 0.0;             // r_aux = sqrt(1 - sum P)
};

// theta_j = 2*acos(sqrt(P_j) / sqrt(1 - sum_{k<j} P_k)), argument clamped to
// [0,1]; zero for zero-mass indices and once the remaining mass is exhausted.
CakePlan cake_angles(std::span<const double> prob_row, int n_value_qubits = 5);

// Walks the basis states in index order: for each massive state, a
// multi-controlled Ry splits off its amplitude and multi-controlled X gates
// steer the not-yet-initialized remainder to the next state. A nonzero
// residual ends parked at |1...1>|1>_aux.
Circuit build_cake_circuit(const CakePlan& plan);

StateVector prepare_state(std::span<const double> prob_row, int n_value_qubits = 5);

// L2 distance between the prepared state and the directly constructed target
// (sqrt(P_j) amplitudes plus the residual slot).
double init_error(std::span<const double> prob_row, int n_value_qubits = 5);

// One residue per position: prepare row i, measure once, decode the five
// amino qubits. Auxiliary-register hits are re-drawn. Deterministic per seed.
std::string generate_sequence(const OccurrenceMatrix& m, std::size_t length, std::uint64_t seed);

}  // namespace qprot
