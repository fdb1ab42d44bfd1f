// qprot: protein similarity pipeline
//
// Subcommands: ingest, generate, rank, compare, dotplot.
// Exit codes: 0 success, 2 usage error, 3 data error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qprot/cake.hpp"
#include "qprot/dotplot.hpp"
#include "qprot/engines.hpp"
#include "qprot/occurrence.hpp"

using nlohmann::json;

namespace {

constexpr int kExitData = 3;

qprot::Database load_filtered(const std::string& path, json* report) {
    qprot::ParseReport parse_report;
    qprot::Database raw = qprot::parse_fasta_file(path, &parse_report);
    qprot::FilterResult filtered = qprot::filter_standard(raw);

    if (report) {
        std::vector<std::string> rejected = parse_report.rejected_ids;
        rejected.insert(rejected.end(), filtered.rejected_ids.begin(), filtered.rejected_ids.end());
        (*report)["records"] = filtered.db.size();
        (*report)["rejected"] = rejected.size();
        (*report)["rejected_ids"] = rejected;
    }
    return std::move(filtered.db);
}

// A sequence argument is either residue letters or @path to a FASTA file
// whose first record is used.
std::string resolve_sequence(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        qprot::Database db = qprot::parse_fasta_file(arg.substr(1));
        if (db.empty()) throw qprot::Error("no records in " + arg.substr(1));
        return db.at(0).sequence;
    }
    for (char c : arg)
        if (!qprot::is_standard_residue(c)) throw qprot::InvalidResidueError(c);
    return arg;
}

struct EngineFlags {
    std::string engine = "cnw";
    int gp = 1;
    double wsim = 0.30, minsim = 0.75, wedges = 1.00, delta = 0.25;
    std::string backend = "auto";
    std::uint64_t seed = 1;
    int anneal_restarts = 8;
    int anneal_sweeps = 256;
    int qaoa_p = 3;
    int qaoa_restarts = 10;
    std::uint64_t qaoa_shots = 2048;
    std::size_t conflict_cap = 4096;

    void attach(CLI::App* cmd) {
        cmd->add_option("--engine", engine, "cnw|csw|qnw|qsw|conflict")->capture_default_str();
        cmd->add_option("--gp", gp, "gap penalty GP_1")->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--wsim", wsim, "conflict: vertex/neighborhood mix")->capture_default_str();
        cmd->add_option("--minsim", minsim, "conflict: vertex threshold")->capture_default_str();
        cmd->add_option("--wedges", wedges, "conflict: edge weight")->capture_default_str();
        cmd->add_option("--delta", delta, "conflict: max/min mix")->capture_default_str();
        cmd->add_option("--backend", backend, "auto|brute|anneal|qaoa")->capture_default_str();
        cmd->add_option("--seed", seed, "solver seed")->capture_default_str();
        cmd->add_option("--anneal-restarts", anneal_restarts)->capture_default_str();
        cmd->add_option("--anneal-sweeps", anneal_sweeps)->capture_default_str();
        cmd->add_option("--qaoa-p", qaoa_p, "QAOA layers")->capture_default_str();
        cmd->add_option("--qaoa-restarts", qaoa_restarts)->capture_default_str();
        cmd->add_option("--qaoa-shots", qaoa_shots)->capture_default_str();
        cmd->add_option("--conflict-cap", conflict_cap, "conflict-graph vertex cap")
            ->capture_default_str();
    }

    qprot::EngineParams to_params() const {
        qprot::EngineParams p;
        const auto e = qprot::engine_from_name(engine);
        if (!e) throw qprot::Error("unknown engine: " + engine);
        p.engine = *e;
        p.gp = gp;
        p.conflict = {wsim, minsim, wedges, delta};
        p.conflict.validate();
        const auto b = qprot::backend_from_name(backend);
        if (!b) throw qprot::Error("unknown backend: " + backend);
        p.solver.backend = *b;
        p.solver.anneal.restarts = anneal_restarts;
        p.solver.anneal.sweeps = anneal_sweeps;
        p.solver.anneal.seed = seed;
        p.solver.qaoa.p = qaoa_p;
        p.solver.qaoa.restarts = qaoa_restarts;
        p.solver.qaoa.shots = qaoa_shots;
        p.solver.qaoa.seed = seed;
        p.conflict_vertex_cap = conflict_cap;
        return p;
    }

    json echo() const {
        return json{{"engine", engine},
                    {"gp", gp},
                    {"wsim", wsim},
                    {"minsim", minsim},
                    {"wedges", wedges},
                    {"delta", delta},
                    {"backend", backend},
                    {"seed", seed},
                    {"anneal_restarts", anneal_restarts},
                    {"anneal_sweeps", anneal_sweeps},
                    {"qaoa_p", qaoa_p},
                    {"qaoa_restarts", qaoa_restarts},
                    {"qaoa_shots", qaoa_shots},
                    {"conflict_cap", conflict_cap}};
    }
};

int cmd_ingest(const std::string& fasta, const std::string& cache, std::size_t max_positions) {
    json report;
    const std::uint64_t tag = qprot::fnv1a_file(fasta);

    // a valid cache built from the same file is reused
    {
        std::ifstream in(cache, std::ios::binary);
        if (in) {
            try {
                qprot::OccurrenceMatrix cached = qprot::load_matrix(in);
                if (cached.source_tag == tag) {
                    qprot::Database db = load_filtered(fasta, &report);
                    report["cache"] = "hit";
                    report["positions"] = cached.positions();
                    std::cout << report.dump() << '\n';
                    return 0;
                }
            } catch (const qprot::CacheInvalidError&) {
                // fall through and rebuild
            }
        }
    }

    qprot::Database db = load_filtered(fasta, &report);
    if (db.empty()) throw qprot::Error("no standard-alphabet records in " + fasta);
    qprot::OccurrenceMatrix m = qprot::build_occurrence(db, max_positions);
    m.source_tag = tag;
    std::ofstream out(cache, std::ios::binary);
    if (!out) throw qprot::Error("cannot write cache: " + cache);
    qprot::save_matrix(m, out);
    report["cache"] = "written";
    report["positions"] = m.positions();
    std::cout << report.dump() << '\n';
    return 0;
}

int cmd_generate(const std::string& cache, std::size_t length, std::uint64_t seed) {
    std::ifstream in(cache, std::ios::binary);
    if (!in) throw qprot::Error("cannot open cache: " + cache);
    const qprot::OccurrenceMatrix m = qprot::load_matrix(in);
    const std::string seq = qprot::generate_sequence(m, length, seed);
    std::cout << ">qprot|generated length=" << length << " seed=" << seed << '\n';
    for (std::size_t i = 0; i < seq.size(); i += 60) std::cout << seq.substr(i, 60) << '\n';
    return 0;
}

int cmd_rank(const std::string& db_path, const std::string& test, const EngineFlags& flags,
             std::size_t top_k, int workers, const std::string& json_path) {
    qprot::Database db = load_filtered(db_path, nullptr);
    if (db.empty()) throw qprot::Error("no usable records in " + db_path);

    std::string test_seq, test_id;
    if (const qprot::ProteinRecord* rec = db.find(test)) {
        test_seq = rec->sequence;
        test_id = rec->entry_id;
    } else if (std::ifstream probe(test); probe.good()) {
        qprot::Database tdb = qprot::parse_fasta_file(test);
        if (tdb.empty()) throw qprot::Error("no records in " + test);
        test_seq = tdb.at(0).sequence;
        test_id = tdb.at(0).entry_id;
    } else {
        throw qprot::Error("unknown entry id (and no such file): " + test);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const qprot::RankReport report =
        qprot::rank_database(db, test_seq, test_id, flags.to_params(), top_k, workers, flags.seed);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "rank: " << db.size() << " proteins in " << elapsed << " s\n";

    qprot::write_podium_tsv(report, std::cout);

    if (!json_path.empty()) {
        json j;
        j["test"] = report.test_id;
        j["test_length"] = report.test_length;
        j["engine"] = qprot::engine_name(report.params.engine);
        j["params"] = flags.echo();
        j["workers"] = report.workers;
        j["rows"] = json::array();
        for (const auto& row : report.rows) {
            j["rows"].push_back({{"entry_id", row.entry_id},
                                 {"length", row.length},
                                 {"score", row.raw_score},
                                 {"similarity", row.similarity},
                                 {"length_ratio", row.length_ratio}});
        }
        std::ofstream out(json_path);
        if (!out) throw qprot::Error("cannot write " + json_path);
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_compare(const std::string& a_arg, const std::string& b_arg, const EngineFlags& flags,
                bool show_matrix, std::size_t cap, const std::string& json_path) {
    const std::string a = resolve_sequence(a_arg);
    const std::string b = resolve_sequence(b_arg);
    const qprot::EngineParams params = flags.to_params();

    json j;
    j["engine"] = flags.engine;
    j["params"] = flags.echo();
    j["sequence_a"] = a;
    j["sequence_b"] = b;

    if (params.engine == qprot::Engine::CNW || params.engine == qprot::Engine::CSW) {
        const auto algo = params.engine == qprot::Engine::CNW ? qprot::AlignAlgo::NW
                                                              : qprot::AlignAlgo::SW;
        const qprot::ScoringMatrix m = algo == qprot::AlignAlgo::NW
                                           ? qprot::nw_matrix(a, b, params.gp)
                                           : qprot::sw_matrix(a, b, params.gp);
        const qprot::TracebackResult tb = algo == qprot::AlignAlgo::NW
                                              ? qprot::nw_traceback(m, a, b, params.gp, cap)
                                              : qprot::sw_traceback(m, a, b, params.gp, cap);
        const long long gamma_ref = qprot::reference_score(a, qprot::blosum62());
        const double s = qprot::classical_similarity(a, b, algo, params.gp);

        std::cout << "engine: " << flags.engine << "  gp: " << params.gp << '\n';
        std::cout << "gamma_ref: " << gamma_ref << '\n';
        std::cout << "candidates: " << tb.candidates.size() << (tb.truncated ? " (truncated)" : "")
                  << '\n';
        for (const auto& c : tb.candidates) {
            std::cout << "  score " << c.score << "  (match " << c.n_match << ", mismatch "
                      << c.n_mismatch << ", gap " << c.n_gap << ")\n";
            std::cout << "    " << c.aligned_a << '\n';
            std::cout << "    " << c.aligned_b << '\n';
        }
        std::cout << "best_gamma: " << (tb.candidates.empty() ? 0 : tb.best_score()) << '\n';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", s);
        std::cout << "similarity: " << buf << '\n';
        if (show_matrix) {
            for (std::size_t i = 0; i < m.rows; ++i) {
                for (std::size_t jx = 0; jx < m.cols; ++jx)
                    std::cout << (jx ? "\t" : "") << m.at(i, jx);
                std::cout << '\n';
            }
        }

        j["gamma_ref"] = gamma_ref;
        j["similarity"] = s;
        j["truncated"] = tb.truncated;
        j["candidates"] = json::array();
        for (const auto& c : tb.candidates) {
            j["candidates"].push_back({{"a", c.aligned_a},
                                       {"b", c.aligned_b},
                                       {"score", c.score},
                                       {"match", c.n_match},
                                       {"mismatch", c.n_mismatch},
                                       {"gap", c.n_gap}});
        }
    } else {
        const qprot::EngineContext ctx(a, params);
        const auto scored = ctx.score(b, 1);
        std::cout << "engine: " << flags.engine << "  backend: " << flags.backend << '\n';
        if (params.engine != qprot::Engine::Conflict) {
            const auto m = params.engine == qprot::Engine::QNW ? qprot::nw_matrix(a, b, params.gp)
                                                               : qprot::sw_matrix(a, b, params.gp);
            std::cout << "qubo_size: " << std::max(m.rows, m.cols) << '\n';
        }
        std::cout << "xi_ref: " << ctx.reference() << '\n';
        std::cout << "xi: " << scored.raw_score << '\n';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", scored.similarity);
        std::cout << "similarity: " << buf << '\n';
        j["xi_ref"] = ctx.reference();
        j["xi"] = scored.raw_score;
        j["similarity"] = scored.similarity;
    }

    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw qprot::Error("cannot write " + json_path);
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_dotplot(const std::string& a_arg, const std::string& b_arg, const std::string& out_path,
                bool ascii) {
    const std::string a = resolve_sequence(a_arg);
    const std::string b = resolve_sequence(b_arg);
    const qprot::DotplotMatrix m = qprot::dotplot(a, b);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qprot::Error("cannot write " + out_path);
    if (ascii) qprot::write_ascii(m, out);
    else qprot::write_pgm(m, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"protein sequence generation and similarity ranking"};
    app.set_config("--config");
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse a FASTA database and cache its occurrence matrix");
    std::string in_fasta, in_cache;
    std::size_t max_positions = 2048;
    ingest->add_option("--fasta", in_fasta, "FASTA file")->required();
    ingest->add_option("--cache", in_cache, "occurrence cache path")->required();
    ingest->add_option("--max-positions", max_positions)->capture_default_str();

    // generate
    auto* generate = app.add_subcommand("generate", "sample a random sequence from a cached occurrence matrix");
    std::string gen_cache;
    std::size_t gen_length = 50;
    std::uint64_t gen_seed = 1;
    generate->add_option("--cache", gen_cache)->required();
    generate->add_option("--length", gen_length)->capture_default_str();
    generate->add_option("--seed", gen_seed)->capture_default_str();

    // rank
    auto* rank = app.add_subcommand("rank", "rank database proteins by similarity to a test protein");
    std::string rank_db, rank_test, rank_json;
    std::size_t top_k = 10;
    int workers = 1;
    EngineFlags rank_flags;
    rank->add_option("--db", rank_db, "FASTA database")->required();
    rank->add_option("--test", rank_test, "entry id in the database or a FASTA path")->required();
    rank_flags.attach(rank);
    rank->add_option("--top", top_k)->capture_default_str();
    rank->add_option("--workers", workers)->check(CLI::PositiveNumber)->capture_default_str();
    rank->add_option("--json", rank_json, "also write a JSON report here");

    // compare
    auto* compare = app.add_subcommand("compare", "detailed single-pair report");
    std::string cmp_a, cmp_b, cmp_json;
    bool cmp_matrix = false;
    std::size_t cmp_cap = 1024;
    EngineFlags cmp_flags;
    compare->add_option("a", cmp_a, "residues or @fasta")->required();
    compare->add_option("b", cmp_b, "residues or @fasta")->required();
    cmp_flags.attach(compare);
    compare->add_flag("--matrix", cmp_matrix, "print the scoring matrix");
    compare->add_option("--cap", cmp_cap, "traceback candidate cap")->capture_default_str();
    compare->add_option("--json", cmp_json);

    // dotplot
    auto* dot = app.add_subcommand("dotplot", "write a dotplot as PGM or ASCII");
    std::string dot_a, dot_b, dot_out;
    bool dot_ascii = false;
    dot->add_option("a", dot_a)->required();
    dot->add_option("b", dot_b)->required();
    dot->add_option("--out", dot_out)->required();
    dot->add_flag("--ascii", dot_ascii);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*ingest) return cmd_ingest(in_fasta, in_cache, max_positions);
        if (*generate) return cmd_generate(gen_cache, gen_length, gen_seed);
        if (*rank) return cmd_rank(rank_db, rank_test, rank_flags, top_k, workers, rank_json);
        if (*compare) return cmd_compare(cmp_a, cmp_b, cmp_flags, cmp_matrix, cmp_cap, cmp_json);
        if (*dot) return cmd_dotplot(dot_a, dot_b, dot_out, dot_ascii);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 2;
}
