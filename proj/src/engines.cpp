#include "qprot/engines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "qprot/rng.hpp"

namespace qprot {

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::CNW: return "cnw";
        case Engine::CSW: return "csw";
        case Engine::QNW: return "qnw";
        case Engine::QSW: return "qsw";
        case Engine::Conflict: return "conflict";
    }
    return "?";
}

std::optional<Engine> engine_from_name(const std::string& name) {
    if (name == "cnw") return Engine::CNW;
    if (name == "csw") return Engine::CSW;
    if (name == "qnw") return Engine::QNW;
    if (name == "qsw") return Engine::QSW;
    if (name == "conflict") return Engine::Conflict;
    return std::nullopt;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Brute: return "brute";
        case Backend::Anneal: return "anneal";
        case Backend::Qaoa: return "qaoa";
    }
    return "?";
}

std::optional<Backend> backend_from_name(const std::string& name) {
    if (name == "auto") return Backend::Auto;
    if (name == "brute") return Backend::Brute;
    if (name == "anneal") return Backend::Anneal;
    if (name == "qaoa") return Backend::Qaoa;
    return std::nullopt;
}

Solution SolverConfig::solve(const QuboProblem& p, std::uint64_t stream) const {
    Backend b = backend;
    if (b == Backend::Auto) b = p.n <= 20 ? Backend::Brute : Backend::Anneal;
    switch (b) {
        case Backend::Brute:
            return brute_force(p);
        case Backend::Anneal: {
            AnnealParams ap = anneal;
            ap.seed = stream_seed(ap.seed, stream);
            return qprot::anneal(p, ap);
        }
        case Backend::Qaoa: {
            QaoaParams qp = qaoa;
            qp.seed = stream_seed(qp.seed, stream);
            const QaoaResult r = qaoa_solve(p, qp);
            return Solution{r.best_x, r.best_energy, "qaoa"};
        }
        case Backend::Auto:
            break;
    }
    throw Error("unreachable backend");
}

namespace {

double length_ratio(std::size_t nt, std::size_t ni) {
    const double a = static_cast<double>(nt), b = static_cast<double>(ni);
    return std::min(a, b) / std::max(a, b);
}

ScoringMatrix engine_matrix(Engine e, const std::string& a, const std::string& b, int gp) {
    const bool nw = e == Engine::QNW;
    return nw ? nw_matrix(a, b, gp) : sw_matrix(a, b, gp);
}

double solve_pair_energy(Engine e, const std::string& a, const std::string& b, int gp,
                         const SolverConfig& solver, std::uint64_t stream) {
    const QuboProblem p = from_scoring_matrix(engine_matrix(e, a, b, gp));
    return solver.solve(p, stream).energy;
}

double conflict_pair_score(const std::string& a, const std::string& b, const ConflictParams& cp,
                           const SolverConfig& solver, std::size_t cap, std::uint64_t stream) {
    const ConflictGraph g = build_conflict_graph(protein_graph(a), protein_graph(b), cp, cap);
    if (g.vertices.empty()) return 0.0;
    const QuboProblem p = from_conflict_graph(g, default_conflict_penalty(g));
    const Solution s = solver.solve(p, stream);
    return conflict_score(g, s.x, cp.delta);
}

}  // namespace

EngineContext::EngineContext(std::string test_seq, const EngineParams& params)
    : test_(std::move(test_seq)), params_(params) {
    if (test_.empty()) throw Error("empty test sequence");
    switch (params_.engine) {
        case Engine::CNW:
        case Engine::CSW:
            reference_ = static_cast<double>(reference_score(test_, blosum62()));
            break;
        case Engine::QNW:
        case Engine::QSW:
            reference_ = solve_pair_energy(params_.engine, test_, test_, params_.gp,
                                           params_.solver, /*stream=*/0);
            if (reference_ <= 0.0)
                throw DegenerateReferenceError("self-comparison energy is not positive");
            break;
        case Engine::Conflict:
            reference_ = conflict_pair_score(test_, test_, params_.conflict, params_.solver,
                                             params_.conflict_vertex_cap, /*stream=*/0);
            if (reference_ <= 0.0)
                throw DegenerateReferenceError("self-comparison coverage is zero");
            break;
    }
}

EngineContext::Scored EngineContext::score(const std::string& other, std::uint64_t stream) const {
    if (other.empty()) throw Error("empty database sequence");
    const double ratio = length_ratio(test_.size(), other.size());
    double raw = 0.0;
    switch (params_.engine) {
        case Engine::CNW:
            raw = static_cast<double>(nw_matrix(test_, other, params_.gp).corner());
            break;
        case Engine::CSW: {
            const long long cell = sw_matrix(test_, other, params_.gp).max_cell();
            raw = static_cast<double>(cell);
            break;
        }
        case Engine::QNW:
        case Engine::QSW:
            raw = solve_pair_energy(params_.engine, test_, other, params_.gp, params_.solver,
                                    stream);
            break;
        case Engine::Conflict:
            raw = conflict_pair_score(test_, other, params_.conflict, params_.solver,
                                      params_.conflict_vertex_cap, stream);
            break;
    }
    return {raw, raw / reference_ * ratio};
}

double energy_similarity(const std::string& test, const std::string& other, Engine engine, int gp,
                         const SolverConfig& solver, std::uint64_t seed_stream) {
    if (engine != Engine::QNW && engine != Engine::QSW)
        throw Error("energy similarity is defined for the quantum engines");
    EngineParams params;
    params.engine = engine;
    params.gp = gp;
    params.solver = solver;
    const EngineContext ctx(test, params);
    return ctx.score(other, seed_stream).similarity;
}

double conflict_similarity(const std::string& test, const std::string& other,
                           const ConflictParams& p, const SolverConfig& solver,
                           std::size_t vertex_cap, std::uint64_t seed_stream) {
    EngineParams params;
    params.engine = Engine::Conflict;
    params.conflict = p;
    params.solver = solver;
    params.conflict_vertex_cap = vertex_cap;
    const EngineContext ctx(test, params);
    return ctx.score(other, seed_stream).similarity;
}

double similarity(const std::string& test, const std::string& other, const EngineParams& params) {
    if (params.engine == Engine::CNW || params.engine == Engine::CSW)
        return classical_similarity(test, other,
                                    params.engine == Engine::CNW ? AlignAlgo::NW : AlignAlgo::SW,
                                    params.gp);
    const EngineContext ctx(test, params);
    return ctx.score(other, 0).similarity;
}

RankReport rank_database(const Database& db, const std::string& test_seq,
                         const std::string& test_id, const EngineParams& params,
                         std::size_t top_k, int workers, std::uint64_t seed) {
    if (db.empty()) throw Error("empty database");
    if (workers < 1) throw Error("need at least one worker");

    const EngineContext ctx(test_seq, params);
    const std::size_t n = db.size();
    std::vector<RankRow> rows(n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                const ProteinRecord& rec = db.at(i);
                const auto scored = ctx.score(rec.sequence, stream_seed(seed, i));
                rows[i] = {rec.entry_id, rec.raw_length(), scored.raw_score, scored.similarity,
                           length_ratio(test_seq.size(), rec.raw_length())};
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.entry_id < b.entry_id;
    });
    if (top_k < rows.size()) rows.resize(top_k);

    RankReport report;
    report.test_id = test_id;
    report.test_length = test_seq.size();
    report.params = params;
    report.seed = seed;
    report.workers = workers;
    report.rows = std::move(rows);
    return report;
}

void write_podium_tsv(const RankReport& r, std::ostream& out) {
    out << "protein_name\tsequence_length\tscore\tsimilarity\n";
    char buf[96];
    for (const auto& row : r.rows) {
        const bool integral = std::nearbyint(row.raw_score) == row.raw_score &&
                              std::abs(row.raw_score) < 1e15;
        if (integral)
            std::snprintf(buf, sizeof(buf), "%.0f", row.raw_score);
        else
            std::snprintf(buf, sizeof(buf), "%.6g", row.raw_score);
        out << row.entry_id << '\t' << row.length << '\t' << buf << '\t';
        std::snprintf(buf, sizeof(buf), "%.3f", row.similarity);
        out << buf << '\n';
    }
}

}  // namespace qprot
