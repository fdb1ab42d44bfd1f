#pragma once

// Test-only oracles, independent of the library's implementation paths.

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qprot/blosum.hpp"
#include "qprot/rng.hpp"

namespace qprot_test {

inline std::string random_sequence(std::mt19937_64& rng, std::size_t len) {
    std::string s;
    s.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        s.push_back(qprot::kAminoLetters[static_cast<std::size_t>(rng() % 20)]);
    return s;
}

// Exhaustive global alignment optimum: recursion over all gapped alignments
// (no dynamic-programming shortcuts beyond memoizing subproblems would be
// fine, but sizes stay <= 6 so plain recursion is the clearest oracle).
inline long long brute_global_best(const std::string& a, const std::string& b, int gp,
                                   std::size_t i, std::size_t j) {
    const qprot::SubstitutionMatrix& sub = qprot::blosum62();
    if (i == a.size() && j == b.size()) return 0;
    long long best = std::numeric_limits<long long>::min();
    if (i < a.size() && j < b.size())
        best = std::max(best,
                        sub.score_symbols(a[i], b[j]) + brute_global_best(a, b, gp, i + 1, j + 1));
    if (i < a.size()) best = std::max(best, -gp + brute_global_best(a, b, gp, i + 1, j));
    if (j < b.size()) best = std::max(best, -gp + brute_global_best(a, b, gp, i, j + 1));
    return best;
}

inline long long brute_global_best(const std::string& a, const std::string& b, int gp) {
    return brute_global_best(a, b, gp, 0, 0);
}

// Exhaustive local optimum: best global alignment over all substring pairs.
inline long long brute_local_best(const std::string& a, const std::string& b, int gp) {
    long long best = 0;
    for (std::size_t i0 = 0; i0 < a.size(); ++i0) {
        for (std::size_t i1 = i0; i1 <= a.size(); ++i1) {
            const std::string sa = a.substr(i0, i1 - i0);
            for (std::size_t j0 = 0; j0 < b.size(); ++j0) {
                for (std::size_t j1 = j0; j1 <= b.size(); ++j1) {
                    const std::string sb = b.substr(j0, j1 - j0);
                    if (sa.empty() || sb.empty()) continue;
                    best = std::max(best, brute_global_best(sa, sb, gp));
                }
            }
        }
    }
    return best;
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - qprot::uniform01(rng));  // exponential: dense support
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

}  // namespace qprot_test
