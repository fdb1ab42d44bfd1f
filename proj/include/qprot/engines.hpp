#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprot/align.hpp"
#include "qprot/conflict.hpp"
#include "qprot/fasta.hpp"
#include "qprot/qaoa.hpp"
#include "qprot/qubo.hpp"

namespace qprot {

enum class Engine { CNW, CSW, QNW, QSW, Conflict };

const char* engine_name(Engine e);
std::optional<Engine> engine_from_name(const std::string& name);

enum class Backend { Auto, Brute, Anneal, Qaoa };

const char* backend_name(Backend b);
std::optional<Backend> backend_from_name(const std::string& name);

struct SolverConfig {
    Backend backend = Backend::Auto;
    AnnealParams anneal;
    QaoaParams qaoa;

    // Auto: brute force up to 20 variables, annealing above.
    Solution solve(const QuboProblem& p, std::uint64_t stream) const;
};

struct EngineParams {
    Engine engine = Engine::CNW;
    int gp = 1;
    ConflictParams conflict;
    SolverConfig solver;
    std::size_t conflict_vertex_cap = 4096;
};

// Pairwise similarity + the engine's raw score for one protein against a
// fixed test protein. Reference quantities are computed once per context.
class EngineContext {
public:
    EngineContext(std::string test_seq, const EngineParams& params);

    struct Scored {
        double raw_score;   // Gamma / Xi / Xi~ depending on the engine
        double similarity;  // S
    };
    // `stream` seeds the per-pair solver runs so results are independent of
    // worker scheduling.
    Scored score(const std::string& other, std::uint64_t stream) const;

    double reference() const { return reference_; }
    const EngineParams& params() const { return params_; }
    const std::string& test_sequence() const { return test_; }

private:
    std::string test_;
    EngineParams params_;
    double reference_ = 0.0;  // Gamma_ref / Xi_ref / Xi~_ref
};

// energy_similarity per the quantum NW/SW engines: Xi from the QUBO optimum
// of the padded scoring matrix, normalized by the self-comparison energy.
double energy_similarity(const std::string& test, const std::string& other, Engine engine, int gp,
                         const SolverConfig& solver, std::uint64_t seed_stream = 0);

double conflict_similarity(const std::string& test, const std::string& other,
                           const ConflictParams& p, const SolverConfig& solver,
                           std::size_t vertex_cap = 4096, std::uint64_t seed_stream = 0);

double similarity(const std::string& test, const std::string& other, const EngineParams& params);

struct RankRow {
    std::string entry_id;
    std::size_t length = 0;
    double raw_score = 0.0;
    double similarity = 0.0;
    double length_ratio = 0.0;
};

struct RankReport {
    std::string test_id;
    std::size_t test_length = 0;
    EngineParams params;
    std::uint64_t seed = 1;
    int workers = 1;
    std::vector<RankRow> rows;  // sorted by similarity desc, entry_id asc
};

// S against every database protein, parallel over `workers`; rows sorted and
// truncated to top_k. Deterministic for fixed seed regardless of workers.
RankReport rank_database(const Database& db, const std::string& test_seq,
                         const std::string& test_id, const EngineParams& params,
                         std::size_t top_k, int workers, std::uint64_t seed);

void write_podium_tsv(const RankReport& r, std::ostream& out);

}  // namespace qprot
