#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qprot/align.hpp"
#include "qprot/conflict.hpp"
#include "qprot/errors.hpp"

namespace qprot {

// Maximize x^T Q x + offset over binary x. Q is stored dense and symmetric.
struct QuboProblem {
    std::size_t n = 0;
    std::vector<double> q;  // n*n, symmetric
    double offset = 0.0;

    double at(std::size_t i, std::size_t j) const { return q[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return q[i * n + j]; }
    double objective(std::span<const std::uint8_t> x) const;
};

// Zero-pads the scoring matrix to square and symmetrizes it; x^T M x depends
// only on the symmetric part.
QuboProblem from_scoring_matrix(const ScoringMatrix& m);

// Diagonal = vertex weights; every edge (compatibility or conflict)
// contributes -w_ij x_i x_j, with conflict edges weighted by
// conflict_penalty. Matches the graph objective exactly on all binary x.
QuboProblem from_conflict_graph(const ConflictGraph& g, double conflict_penalty);

// 2 * max vertex weight * n; large enough that no optimum keeps two vertices
// claiming the same residue.
double default_conflict_penalty(const ConflictGraph& g);

struct Solution {
    std::vector<std::uint8_t> x;
    double energy = 0.0;
    std::string method;
};

// Exact optimum by Gray-code sweep; ties break toward the smallest bitstring
// as an integer (bit i weighted 2^i).
Solution brute_force(const QuboProblem& p);  // n <= 24

struct AnnealParams {
    int restarts = 8;
    int sweeps = 256;
    double t0 = 0.0;  // 0: derived from the coefficient scale
    double t1 = 0.0;
    std::uint64_t seed = 1;
};

Solution anneal(const QuboProblem& p, const AnnealParams& params);

// Text format: first line "n offset", then "i j value" upper-triangle
// triples; decimal serialization round-trips doubles exactly.
void save_qubo(const QuboProblem& p, std::ostream& out);
QuboProblem load_qubo(std::istream& in);

}  // namespace qprot
