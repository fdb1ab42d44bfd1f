#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qprot/qsim.hpp"
#include "qprot/qubo.hpp"

namespace qprot {

// Ising reformulation of a QUBO under x_i = (1 - z_i)/2; minimizing the Ising
// energy maximizes the QUBO objective.
struct IsingModel {
    std::size_t n = 0;
    std::vector<double> h;        // linear terms
    std::vector<double> j;        // n*n, only i<j used
    double offset = 0.0;

    double coupling(std::size_t a, std::size_t b) const { return j[a * n + b]; }
    double energy(std::span<const int> z) const;  // z in {-1,+1}^n
};

IsingModel qubo_to_ising(const QuboProblem& q);

// H on every qubit, then per layer: e^{-i gamma J_ij Z_i Z_j} blocks
// (CX, Rz, CX), Rz(2 gamma h_i), and Rx(2 beta) mixers.
Circuit qaoa_circuit(const IsingModel& m, std::span<const double> gammas,
                     std::span<const double> betas);

// <psi|H_C|psi> reported in QUBO-maximization sense.
double qaoa_expectation(const QuboProblem& q, std::span<const double> gammas,
                        std::span<const double> betas);

struct QaoaParams {
    int p = 3;
    std::uint64_t shots = 2048;
    int max_iterations = 200;
    int restarts = 10;
    std::uint64_t seed = 1;
};

struct QaoaResult {
    std::vector<std::uint8_t> best_x;
    double best_energy = 0.0;                    // QUBO sense
    std::vector<double> gammas, betas;           // angles at the optimum
    std::vector<std::pair<int, double>> trace;   // (iteration, expectation)
    bool flat_landscape = false;
    double spectral_symmetry = 0.0;              // ||sort(l)+rev(sort(l))|| / ||l||
    int total_iterations = 0;
};

// Hybrid loop: Nelder-Mead over (gammas, betas) on the simulated expectation,
// then `shots` measurements at the best angles; the best sampled bitstring
// wins. Deterministic under a fixed seed.
QaoaResult qaoa_solve(const QuboProblem& q, const QaoaParams& params);

// Eigenvalues of a dense symmetric matrix (cyclic Jacobi). Used for the
// spectral-symmetry diagnostic.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

void export_trace_csv(const QaoaResult& r, std::ostream& out);

}  // namespace qprot
