#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "qprot/align.hpp"
#include "qprot/dotplot.hpp"
#include "test_util.hpp"

using namespace qprot;
using qprot_test::brute_global_best;
using qprot_test::brute_local_best;
using qprot_test::random_sequence;

namespace {
const std::string kWorkedA = "MAFSAEDVLK";
const std::string kWorkedB = "MASIATRVLQ";
}  // namespace

TEST_CASE("blosum62 spot values") {
    const SubstitutionMatrix& m = blosum62();
    CHECK(m.score_symbols('M', 'M') == 5);
    CHECK(m.score_symbols('A', 'A') == 4);
    CHECK(m.score_symbols('F', 'F') == 6);
    CHECK(m.score_symbols('S', 'S') == 4);
    CHECK(m.score_symbols('E', 'E') == 5);
    CHECK(m.score_symbols('D', 'D') == 6);
    CHECK(m.score_symbols('V', 'V') == 4);
    CHECK(m.score_symbols('L', 'L') == 4);
    CHECK(m.score_symbols('K', 'K') == 5);
    CHECK(m.score_symbols('E', 'T') == -1);
    CHECK(m.score_symbols('D', 'R') == -2);
    CHECK(m.score_symbols('K', 'Q') == 1);
    CHECK(m.score_symbols('A', 'T') == 0);
    CHECK(m.score_symbols('E', 'R') == 0);
}

TEST_CASE("blosum62 is symmetric") {
    const SubstitutionMatrix& m = blosum62();
    for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b) CHECK(m.score(a, b) == m.score(b, a));
}

TEST_CASE("dotplot patterns") {
    const DotplotMatrix all = dotplot("AA", "AA");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(all.at(i, j));

    const DotplotMatrix anti = dotplot("AR", "RA");
    CHECK(anti.at(0, 1));
    CHECK(anti.at(1, 0));
    CHECK_FALSE(anti.at(0, 0));
    CHECK_FALSE(anti.at(1, 1));

    const std::string s = "MAFSAEDVLK";
    const DotplotMatrix ident = dotplot(s, s);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(ident.at(i, i));
}

TEST_CASE("dotplot exports") {
    const DotplotMatrix m = dotplot("MA", "MA");
    std::ostringstream pgm;
    write_pgm(m, pgm);
    CHECK(pgm.str().substr(0, 3) == "P5\n");
    std::ostringstream ascii;
    write_ascii(m, ascii);
    CHECK(ascii.str() == "#.\n.#\n");
}

TEST_CASE("nw matrix borders and single-cell case") {
    const ScoringMatrix m = nw_matrix("M", "M", 1);
    CHECK(m.at(0, 0) == 0);
    CHECK(m.at(0, 1) == -1);
    CHECK(m.at(1, 0) == -1);
    CHECK(m.at(1, 1) == 5);
}

TEST_CASE("nw borders scale with the gap unit") {
    for (int gp : {0, 1, 2, 4}) {
        const ScoringMatrix m = nw_matrix("MAFS", "MASI", gp);
        for (std::size_t j = 0; j < m.cols; ++j)
            CHECK(m.at(0, j) == -static_cast<long long>(j) * gp);
        for (std::size_t i = 0; i < m.rows; ++i)
            CHECK(m.at(i, 0) == -static_cast<long long>(i) * gp);
    }
}

TEST_CASE("every interior nw cell satisfies the recursion (independent recheck)") {
    std::mt19937_64 rng(17);
    const SubstitutionMatrix& sub = blosum62();
    for (int trial = 0; trial < 10; ++trial) {
        const std::string a = random_sequence(rng, 3 + rng() % 12);
        const std::string b = random_sequence(rng, 3 + rng() % 12);
        const int gp = static_cast<int>(rng() % 4);
        const ScoringMatrix m = nw_matrix(a, b, gp);
        for (std::size_t i = 1; i < m.rows; ++i) {
            for (std::size_t j = 1; j < m.cols; ++j) {
                const long long expect = std::max(
                    {m.at(i - 1, j - 1) + sub.score_symbols(a[i - 1], b[j - 1]),
                     m.at(i - 1, j) - gp, m.at(i, j - 1) - gp});
                CHECK(m.at(i, j) == expect);
            }
        }
    }
}

TEST_CASE("sw matrices are nonnegative with zero borders") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const std::string a = random_sequence(rng, 2 + rng() % 10);
        const std::string b = random_sequence(rng, 2 + rng() % 10);
        const ScoringMatrix m = sw_matrix(a, b, 1 + static_cast<int>(rng() % 3));
        for (std::size_t j = 0; j < m.cols; ++j) CHECK(m.at(0, j) == 0);
        for (std::size_t i = 0; i < m.rows; ++i) CHECK(m.at(i, 0) == 0);
        for (long long v : m.cells) CHECK(v >= 0);
    }
}

TEST_CASE("sw clamps negative single-residue scores at zero") {
    const ScoringMatrix m = sw_matrix("D", "R", 1);
    CHECK(m.at(1, 1) == 0);
    const ScoringMatrix mm = sw_matrix("M", "M", 1);
    CHECK(mm.at(1, 1) == 5);
}

TEST_CASE("reference scores") {
    CHECK(reference_score(kWorkedA, blosum62()) == 47);
    CHECK(reference_score("M", blosum62()) == 5);
    // equals the identity alignment's candidate score
    AlignmentCandidate ident;
    ident.aligned_a = ident.aligned_b = "MAFS";
    ident.n_match = 4;
    CHECK(candidate_score(ident, blosum62(), 1) == reference_score("MAFS", blosum62()));
}

TEST_CASE("candidate scores for the published example alignments") {
    // close-to-diagonal variant: one gap on each side
    AlignmentCandidate a;
    a.aligned_a = "MAFS-AEDVLK";
    a.aligned_b = "MA-SIATRVLQ";
    CHECK(candidate_score(a, blosum62(), 1) == 21);

    // off-diagonal variant: four gap columns
    AlignmentCandidate b;
    b.aligned_a = "MAFS--AEDVLK";
    b.aligned_b = "MA-SIATR-VLQ";
    CHECK(candidate_score(b, blosum62(), 1) == 18);

    AlignmentCandidate mm;
    mm.aligned_a = mm.aligned_b = "MM";
    CHECK(candidate_score(mm, blosum62(), 1) == 10);
}

TEST_CASE("worked pair: traceback optimum exceeds the hand-picked candidates") {
    // The exhaustive oracle puts the optimum at 22, above the 21/18 pair of
    // alignments usually quoted for this example.
    CHECK(brute_global_best(kWorkedA, kWorkedB, 1) == 22);

    const ScoringMatrix m = nw_matrix(kWorkedA, kWorkedB, 1);
    CHECK(m.corner() == 22);
    const TracebackResult tb = nw_traceback(m, kWorkedA, kWorkedB, 1);
    CHECK(tb.best_score() == 22);
    CHECK_FALSE(tb.truncated);
    for (const auto& c : tb.candidates) CHECK(c.score == 22);
}

TEST_CASE("identical sequences trace to a single all-match candidate") {
    const std::string s = "MAFSAEDVLK";
    const ScoringMatrix m = nw_matrix(s, s, 1);
    const TracebackResult tb = nw_traceback(m, s, s, 1);
    REQUIRE(tb.candidates.size() == 1);
    CHECK(tb.candidates[0].n_match == 10);
    CHECK(tb.candidates[0].n_gap == 0);
    CHECK(tb.candidates[0].score == 47);
}

TEST_CASE("candidates are self-consistent and strip back to the inputs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::string a = random_sequence(rng, 2 + rng() % 8);
        const std::string b = random_sequence(rng, 2 + rng() % 8);
        const int gp = 1 + static_cast<int>(rng() % 3);
        const ScoringMatrix m = nw_matrix(a, b, gp);
        const TracebackResult tb = nw_traceback(m, a, b, gp, 64);
        REQUIRE(!tb.candidates.empty());
        for (const auto& c : tb.candidates) {
            CHECK(c.score == candidate_score(c, blosum62(), gp));
            CHECK(c.n_match + c.n_mismatch + c.n_gap ==
                  static_cast<int>(c.aligned_a.size()));
            std::string stripped_a, stripped_b;
            for (char ch : c.aligned_a)
                if (ch != '-') stripped_a.push_back(ch);
            for (char ch : c.aligned_b)
                if (ch != '-') stripped_b.push_back(ch);
            CHECK(stripped_a == a);
            CHECK(stripped_b == b);
        }
    }
}

TEST_CASE("nw traceback optimum equals the exhaustive search at length <= 6") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const std::string a = random_sequence(rng, 1 + rng() % 6);
        const std::string b = random_sequence(rng, 1 + rng() % 6);
        const int gp = static_cast<int>(rng() % 3);
        const ScoringMatrix m = nw_matrix(a, b, gp);
        const TracebackResult tb = nw_traceback(m, a, b, gp, 4096);
        CHECK(tb.best_score() == brute_global_best(a, b, gp));
    }
}

TEST_CASE("sw traceback equals the exhaustive local search at length <= 5") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        const std::string a = random_sequence(rng, 1 + rng() % 5);
        const std::string b = random_sequence(rng, 1 + rng() % 5);
        const int gp = 1 + static_cast<int>(rng() % 3);
        const ScoringMatrix m = sw_matrix(a, b, gp);
        const TracebackResult tb = sw_traceback(m, a, b, gp, 4096);
        const long long oracle = brute_local_best(a, b, gp);
        if (tb.candidates.empty()) {
            CHECK(oracle == 0);
        } else {
            CHECK(tb.best_score() == oracle);
        }
    }
}

TEST_CASE("sw traceback of an all-negative pair is empty") {
    const ScoringMatrix m = sw_matrix("D", "R", 1);
    const TracebackResult tb = sw_traceback(m, "D", "R", 1);
    CHECK(tb.candidates.empty());
    CHECK(classical_similarity("D", "R", AlignAlgo::SW, 1) == 0.0);
}

TEST_CASE("sw local equals nw global on the worked pair") {
    const ScoringMatrix m = sw_matrix(kWorkedA, kWorkedB, 1);
    const TracebackResult tb = sw_traceback(m, kWorkedA, kWorkedB, 1);
    CHECK(tb.best_score() == 22);
}

TEST_CASE("traceback cap truncates deterministically") {
    // AAAA vs AA at gp=0 has C(4,2)=6 co-optimal alignments
    const std::string a = "AAAA";
    const std::string b = "AA";
    const ScoringMatrix m = nw_matrix(a, b, 0);
    const TracebackResult capped = nw_traceback(m, a, b, 0, 5);
    CHECK(capped.candidates.size() == 5);
    CHECK(capped.truncated);
    const TracebackResult full = nw_traceback(m, a, b, 0, 100000);
    CHECK(full.candidates.size() == 6);
    CHECK_FALSE(full.truncated);
    const TracebackResult exact = nw_traceback(m, a, b, 0, 6);
    CHECK(exact.candidates.size() == 6);
    CHECK_FALSE(exact.truncated);
}

TEST_CASE("gap-free identical alignment wins at gp=0 for both algorithms") {
    const std::string s = "MSKGEL";
    const TracebackResult nw = nw_traceback(nw_matrix(s, s, 0), s, s, 0, 8192);
    bool found_all_match = false;
    for (const auto& c : nw.candidates)
        if (c.n_gap == 0 && c.n_mismatch == 0) found_all_match = true;
    CHECK(found_all_match);
    CHECK(nw.best_score() == reference_score(s, blosum62()));

    const TracebackResult sw = sw_traceback(sw_matrix(s, s, 0), s, s, 0, 8192);
    CHECK(sw.best_score() == reference_score(s, blosum62()));
}

TEST_CASE("best nw score never improves when the gap penalty grows") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const std::string a = random_sequence(rng, 3 + rng() % 8);
        const std::string b = random_sequence(rng, 3 + rng() % 8);
        long long prev = nw_matrix(a, b, 0).corner();
        for (int gp = 1; gp <= 4; ++gp) {
            const long long cur = nw_matrix(a, b, gp).corner();
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("classical similarity") {
    // worked pair under the implemented (optimal) traceback: 22/47
    CHECK(classical_similarity(kWorkedA, kWorkedB, AlignAlgo::NW, 1) ==
          doctest::Approx(22.0 / 47.0));
    CHECK(classical_similarity(kWorkedA, kWorkedA, AlignAlgo::NW, 1) == doctest::Approx(1.0));
    CHECK(classical_similarity(kWorkedA, kWorkedA, AlignAlgo::SW, 2) == doctest::Approx(1.0));

    // the length ratio scales the score
    const double s = classical_similarity("MAFSAEDVLK", "MAFSA", AlignAlgo::NW, 1);
    const long long gamma = nw_matrix("MAFSAEDVLK", "MAFSA", 1).corner();
    CHECK(s == doctest::Approx(static_cast<double>(gamma) / 47.0 * 0.5));
}

TEST_CASE("negative nw similarity is reported unclamped") {
    // tiny unrelated residues with a heavy gap penalty go negative
    const double s = classical_similarity("WW", "DD", AlignAlgo::NW, 4);
    CHECK(s < 0.0);
}

TEST_CASE("max gamma is symmetric under sequence swap (s-normalization is not)") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 15; ++trial) {
        const std::string a = random_sequence(rng, 1 + rng() % 6);
        const std::string b = random_sequence(rng, 1 + rng() % 6);
        const int gp = 1 + static_cast<int>(rng() % 3);
        CHECK(nw_matrix(a, b, gp).corner() == nw_matrix(b, a, gp).corner());
        CHECK(sw_matrix(a, b, gp).max_cell() == sw_matrix(b, a, gp).max_cell());
    }
}

TEST_CASE("empty sequences and negative gp are rejected") {
    CHECK_THROWS(nw_matrix("", "MA", 1));
    CHECK_THROWS(sw_matrix("MA", "", 1));
    CHECK_THROWS(nw_matrix("MA", "MA", -1));
    CHECK_THROWS(reference_score("", blosum62()));
}
