#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qprot/blosum.hpp"
#include "qprot/errors.hpp"

namespace qprot {

enum class AlignAlgo { NW, SW };

// (|A|+1) x (|B|+1) dynamic-programming matrix. NW borders are -k*GP_1, SW
// borders are zero and every cell is clamped at zero.
struct ScoringMatrix {
    AlignAlgo algo = AlignAlgo::NW;
    int gap_unit = 1;
    std::size_t rows = 0;  // |A|+1
    std::size_t cols = 0;  // |B|+1
    std::vector<long long> cells;

    long long at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
    long long& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
    long long corner() const { return cells.back(); }
    long long max_cell() const;
};

ScoringMatrix nw_matrix(const std::string& a, const std::string& b, int gp);
ScoringMatrix sw_matrix(const std::string& a, const std::string& b, int gp);

struct AlignmentCandidate {
    std::string aligned_a;  // gapped, '-' for insertions
    std::string aligned_b;
    int n_match = 0;
    int n_mismatch = 0;
    int n_gap = 0;
    long long score = 0;  // Gamma
};

struct TracebackResult {
    std::vector<AlignmentCandidate> candidates;
    bool truncated = false;
    long long best_score() const;
};

// Depth-first enumeration over every predecessor that attains the recursion
// max, emission order diagonal > up > left. Stops after `cap` candidates and
// flags truncation.
TracebackResult nw_traceback(const ScoringMatrix& m, const std::string& a, const std::string& b,
                             int gp, std::size_t cap = 1024);

// Starts at the maximal cell (ties: lexicographically smallest (i,j)) and
// stops at the first zero cell. An all-zero matrix yields no candidates.
TracebackResult sw_traceback(const ScoringMatrix& m, const std::string& a, const std::string& b,
                             int gp, std::size_t cap = 1024);

// Gamma = sum of substitution scores over residue-pair columns minus
// n_gap * GP_1.
long long candidate_score(const AlignmentCandidate& c, const SubstitutionMatrix& s, int gp);

// Self-alignment score of a sequence: sum of diagonal substitution values.
long long reference_score(const std::string& seq, const SubstitutionMatrix& s);

// S = (best Gamma / Gamma_ref) * (min(Nt,Ni)/max(Nt,Ni)). Negative best
// scores are reported as-is. An SW pair with an all-zero matrix scores 0.
double classical_similarity(const std::string& test, const std::string& other, AlignAlgo algo,
                            int gp);

}  // namespace qprot
