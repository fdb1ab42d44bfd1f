#include "qprot/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qprot/rng.hpp"

namespace qprot {

double QuboProblem::objective(std::span<const std::uint8_t> x) const {
    if (x.size() != n) throw Error("decision vector length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i]) continue;
        const double* row = q.data() + i * n;
        double rowacc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j]) rowacc += row[j];
        acc += rowacc;
    }
    return acc + offset;
}

QuboProblem from_scoring_matrix(const ScoringMatrix& m) {
    if (m.rows == 0 || m.cols == 0) throw Error("empty scoring matrix");
    const std::size_t d = std::max(m.rows, m.cols);
    QuboProblem p;
    p.n = d;
    p.q.assign(d * d, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            const double v = static_cast<double>(m.at(i, j)) / 2.0;
            p.q[i * d + j] += v;
            p.q[j * d + i] += v;
        }
    }
    return p;
}

QuboProblem from_conflict_graph(const ConflictGraph& g, double conflict_penalty) {
    QuboProblem p;
    p.n = g.vertices.size();
    p.q.assign(p.n * p.n, 0.0);
    for (std::size_t k = 0; k < p.n; ++k) p.q[k * p.n + k] = g.vertices[k].weight;
    for (const auto& e : g.edges) {
        const double w =
            e.kind == ConflictEdgeKind::Conflict ? e.weight + conflict_penalty : e.weight;
        p.q[e.a * p.n + e.b] -= w / 2.0;
        p.q[e.b * p.n + e.a] -= w / 2.0;
    }
    return p;
}

double default_conflict_penalty(const ConflictGraph& g) {
    double wmax = 0.0;
    for (const auto& v : g.vertices) wmax = std::max(wmax, v.weight);
    return 2.0 * wmax * static_cast<double>(g.vertices.size());
}

namespace {

// true when x is smaller than y read as an integer with bit i weighted 2^i
bool smaller_bits(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i]) return x[i] < y[i];
    }
    return false;
}

}  // namespace

Solution brute_force(const QuboProblem& p) {
    if (p.n > 24) throw CapacityError("brute force capped at 24 variables");
    const std::size_t n = p.n;

    std::vector<std::uint8_t> x(n, 0);
    std::vector<double> field(n, 0.0);  // field_b = sum_{j != b} q_bj x_j
    double energy = 0.0;

    std::vector<std::uint8_t> best_x = x;
    double best_energy = 0.0;

    const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
    for (std::uint64_t k = 1; k < total; ++k) {
        const int b = std::countr_zero(k);  // bit flipped between gray(k-1) and gray(k)
        const std::size_t bi = static_cast<std::size_t>(b);
        const double delta = p.q[bi * n + bi] + 2.0 * field[bi];
        if (x[bi]) {
            energy -= delta;
            x[bi] = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != bi) field[j] -= p.q[j * n + bi];
        } else {
            energy += delta;
            x[bi] = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != bi) field[j] += p.q[j * n + bi];
        }
        if (energy > best_energy || (energy == best_energy && smaller_bits(x, best_x))) {
            best_energy = energy;
            best_x = x;
        }
    }

    Solution s;
    s.x = std::move(best_x);
    s.method = "brute";
    s.energy = p.objective(s.x);  // exact re-evaluation, no incremental drift
    return s;
}

Solution anneal(const QuboProblem& p, const AnnealParams& params) {
    const std::size_t n = p.n;
    Solution best;
    best.x.assign(n, 0);
    best.energy = p.objective(best.x);
    best.method = "anneal";
    if (n == 0) return best;

    double t0 = params.t0;
    if (t0 <= 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            double row = std::abs(p.q[i * n + i]);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) row += 2.0 * std::abs(p.q[i * n + j]);
            t0 = std::max(t0, row);
        }
        t0 = std::max(t0, 1e-9);
    }
    const double t1 = params.t1 > 0.0 ? params.t1 : std::max(1e-6, 1e-4 * t0);

    for (int r = 0; r < params.restarts; ++r) {
        std::mt19937_64 rng(stream_seed(params.seed, static_cast<std::uint64_t>(r)));
        std::vector<std::uint8_t> x(n);
        for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1);

        std::vector<double> field(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && x[j]) field[i] += p.q[i * n + j];
        double energy = p.objective(x);

        std::vector<std::uint8_t> run_best_x = x;
        double run_best_e = energy;

        for (int sweep = 0; sweep < params.sweeps; ++sweep) {
            const double frac = params.sweeps > 1
                                    ? static_cast<double>(sweep) / static_cast<double>(params.sweeps - 1)
                                    : 1.0;
            const double temp = t0 * std::pow(t1 / t0, frac);
            for (std::size_t b = 0; b < n; ++b) {
                const double gain = p.q[b * n + b] + 2.0 * field[b];
                const double delta = x[b] ? -gain : gain;
                if (delta < 0.0 && uniform01(rng) >= std::exp(delta / temp)) continue;
                energy += delta;
                x[b] ^= 1;
                const double sign = x[b] ? 1.0 : -1.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != b) field[j] += sign * p.q[j * n + b];
                if (energy > run_best_e) {
                    run_best_e = energy;
                    run_best_x = x;
                }
            }
        }
        const double exact = p.objective(run_best_x);
        if (exact > best.energy || (exact == best.energy && smaller_bits(run_best_x, best.x))) {
            best.energy = exact;
            best.x = std::move(run_best_x);
        }
    }
    return best;
}

void save_qubo(const QuboProblem& p, std::ostream& out) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p.offset);
    out << p.n << ' ' << buf << '\n';
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t j = i; j < p.n; ++j) {
            const double v = p.q[i * p.n + j];
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << i << ' ' << j << ' ' << buf << '\n';
        }
    }
}

QuboProblem load_qubo(std::istream& in) {
    QuboProblem p;
    if (!(in >> p.n >> p.offset)) throw Error("qubo text: bad header");
    p.q.assign(p.n * p.n, 0.0);
    std::size_t i, j;
    double v;
    while (in >> i >> j >> v) {
        if (i >= p.n || j >= p.n || j < i) throw Error("qubo text: bad triple");
        p.q[i * p.n + j] = v;
        p.q[j * p.n + i] = v;
    }
    if (!in.eof() && in.fail()) throw Error("qubo text: malformed line");
    return p;
}

}  // namespace qprot
