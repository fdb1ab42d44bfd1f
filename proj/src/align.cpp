#include "qprot/align.hpp"

#include <algorithm>
#include <limits>

namespace qprot {

long long ScoringMatrix::max_cell() const {
    long long best = std::numeric_limits<long long>::min();
    for (long long v : cells) best = std::max(best, v);
    return best;
}

long long TracebackResult::best_score() const {
    long long best = std::numeric_limits<long long>::min();
    for (const auto& c : candidates) best = std::max(best, c.score);
    return best;
}

namespace {

std::vector<int> encode_checked(const std::string& s) {
    if (s.empty()) throw Error("alignment needs nonempty sequences");
    std::vector<int> out;
    out.reserve(s.size());
    for (char c : s) out.push_back(encode_amino(c));
    return out;
}

ScoringMatrix fill(const std::string& a, const std::string& b, int gp, AlignAlgo algo) {
    if (gp < 0) throw Error("gap penalty must be nonnegative");
    const std::vector<int> ca = encode_checked(a);
    const std::vector<int> cb = encode_checked(b);
    const SubstitutionMatrix& sub = blosum62();

    ScoringMatrix m;
    m.algo = algo;
    m.gap_unit = gp;
    m.rows = ca.size() + 1;
    m.cols = cb.size() + 1;
    m.cells.assign(m.rows * m.cols, 0);

    if (algo == AlignAlgo::NW) {
        for (std::size_t j = 0; j < m.cols; ++j) m.at(0, j) = -static_cast<long long>(j) * gp;
        for (std::size_t i = 0; i < m.rows; ++i) m.at(i, 0) = -static_cast<long long>(i) * gp;
    }
    for (std::size_t i = 1; i < m.rows; ++i) {
        for (std::size_t j = 1; j < m.cols; ++j) {
            long long v = m.at(i - 1, j - 1) + sub.score(ca[i - 1], cb[j - 1]);
            v = std::max(v, m.at(i - 1, j) - gp);
            v = std::max(v, m.at(i, j - 1) - gp);
            if (algo == AlignAlgo::SW) v = std::max(v, 0LL);
            m.at(i, j) = v;
        }
    }
    return m;
}

struct Frame {
    std::size_t i, j;
    int next_option;  // 0 diag, 1 up, 2 left, 3 exhausted
    int move_in;      // move taken from the parent into this cell, -1 at root
};

// Shared DFS for both algorithms. `stop` decides where a path terminates.
template <typename StopFn>
TracebackResult enumerate_paths(const ScoringMatrix& m, const std::string& a, const std::string& b,
                                int gp, std::size_t cap, std::size_t si, std::size_t sj,
                                StopFn stop) {
    const SubstitutionMatrix& sub = blosum62();
    TracebackResult result;

    std::vector<Frame> stack;
    stack.push_back({si, sj, 0, -1});

    auto emit = [&]() {
        AlignmentCandidate c;
        // walk the stack from the terminal cell back to the start
        for (std::size_t d = stack.size(); d-- > 1;) {
            const Frame& f = stack[d];
            const Frame& parent = stack[d - 1];
            switch (f.move_in) {
                case 0:
                    c.aligned_a.push_back(a[parent.i - 1]);
                    c.aligned_b.push_back(b[parent.j - 1]);
                    if (a[parent.i - 1] == b[parent.j - 1]) ++c.n_match;
                    else ++c.n_mismatch;
                    break;
                case 1:
                    c.aligned_a.push_back(a[parent.i - 1]);
                    c.aligned_b.push_back('-');
                    ++c.n_gap;
                    break;
                case 2:
                    c.aligned_a.push_back('-');
                    c.aligned_b.push_back(b[parent.j - 1]);
                    ++c.n_gap;
                    break;
            }
        }
        c.score = candidate_score(c, sub, gp);
        result.candidates.push_back(std::move(c));
    };

    bool probing = false;  // cap reached: keep walking only to learn whether more paths exist
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (stop(f.i, f.j)) {
            if (probing) {
                result.truncated = true;
                return result;
            }
            emit();
            if (result.candidates.size() >= cap) probing = true;
            stack.pop_back();
            continue;
        }
        bool descended = false;
        while (f.next_option < 3) {
            const int opt = f.next_option++;
            if (opt == 0 && f.i > 0 && f.j > 0 &&
                m.at(f.i, f.j) ==
                    m.at(f.i - 1, f.j - 1) + sub.score_symbols(a[f.i - 1], b[f.j - 1])) {
                stack.push_back({f.i - 1, f.j - 1, 0, 0});
                descended = true;
                break;
            }
            if (opt == 1 && f.i > 0 && m.at(f.i, f.j) == m.at(f.i - 1, f.j) - gp) {
                stack.push_back({f.i - 1, f.j, 0, 1});
                descended = true;
                break;
            }
            if (opt == 2 && f.j > 0 && m.at(f.i, f.j) == m.at(f.i, f.j - 1) - gp) {
                stack.push_back({f.i, f.j - 1, 0, 2});
                descended = true;
                break;
            }
        }
        if (!descended) stack.pop_back();
    }
    return result;
}

}  // namespace

ScoringMatrix nw_matrix(const std::string& a, const std::string& b, int gp) {
    return fill(a, b, gp, AlignAlgo::NW);
}

ScoringMatrix sw_matrix(const std::string& a, const std::string& b, int gp) {
    return fill(a, b, gp, AlignAlgo::SW);
}

TracebackResult nw_traceback(const ScoringMatrix& m, const std::string& a, const std::string& b,
                             int gp, std::size_t cap) {
    if (m.algo != AlignAlgo::NW) throw Error("nw_traceback needs an NW matrix");
    if (cap == 0) throw Error("candidate cap must be >= 1");
    return enumerate_paths(m, a, b, gp, cap, m.rows - 1, m.cols - 1,
                           [](std::size_t i, std::size_t j) { return i == 0 && j == 0; });
}

TracebackResult sw_traceback(const ScoringMatrix& m, const std::string& a, const std::string& b,
                             int gp, std::size_t cap) {
    if (m.algo != AlignAlgo::SW) throw Error("sw_traceback needs an SW matrix");
    if (cap == 0) throw Error("candidate cap must be >= 1");

    long long best = 0;
    std::size_t si = 0, sj = 0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (m.at(i, j) > best) {
                best = m.at(i, j);
                si = i;
                sj = j;
            }
        }
    }
    if (best == 0) return {};  // no positive cell: nothing aligns

    return enumerate_paths(m, a, b, gp, cap, si, sj,
                           [&m](std::size_t i, std::size_t j) { return m.at(i, j) == 0; });
}

long long candidate_score(const AlignmentCandidate& c, const SubstitutionMatrix& s, int gp) {
    if (c.aligned_a.size() != c.aligned_b.size()) throw Error("candidate sides differ in length");
    long long acc = 0;
    for (std::size_t k = 0; k < c.aligned_a.size(); ++k) {
        const char x = c.aligned_a[k];
        const char y = c.aligned_b[k];
        if (x == '-' && y == '-') throw Error("candidate column with gaps on both sides");
        if (x == '-' || y == '-') acc -= gp;
        else acc += s.score_symbols(x, y);
    }
    return acc;
}

long long reference_score(const std::string& seq, const SubstitutionMatrix& s) {
    if (seq.empty()) throw Error("reference score of an empty sequence");
    long long acc = 0;
    for (char c : seq) {
        const int code = encode_amino(c);
        acc += s.score(code, code);
    }
    return acc;
}

double classical_similarity(const std::string& test, const std::string& other, AlignAlgo algo,
                            int gp) {
    const long long gamma_ref = reference_score(test, blosum62());
    long long best;
    if (algo == AlignAlgo::NW) {
        best = nw_matrix(test, other, gp).corner();
    } else {
        const long long max_cell = sw_matrix(test, other, gp).max_cell();
        if (max_cell == 0) return 0.0;
        best = max_cell;
    }
    const double nt = static_cast<double>(test.size());
    const double ni = static_cast<double>(other.size());
    const double ratio = std::min(nt, ni) / std::max(nt, ni);
    return (static_cast<double>(best) / static_cast<double>(gamma_ref)) * ratio;
}

}  // namespace qprot
