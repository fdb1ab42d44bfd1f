#include "qprot/conflict.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "qprot/amino.hpp"

namespace qprot {

ProteinGraph protein_graph(const std::string& seq) {
    if (seq.empty()) throw Error("protein graph needs a nonempty sequence");
    for (char c : seq)
        if (!is_standard_residue(c)) throw InvalidResidueError(c);
    return ProteinGraph{seq};
}

void ConflictParams::validate() const {
    for (double v : {w_sim, min_sim, w_edges, delta})
        if (v < 0.0 || v > 1.0) throw Error("conflict parameters must lie in [0,1]");
}

double vertex_similarity(const ProteinGraph& g1, std::size_t u, const ProteinGraph& g2,
                         std::size_t v) {
    const double symbol = g1.seq[u] == g2.seq[v] ? 1.0 : 0.0;
    const double degree = g1.degree(u) == g2.degree(v) ? 1.0 : 0.0;
    return (symbol + degree) / 2.0;
}

namespace {

// neighbor symbol multiset of a path-graph vertex: at most two entries
std::array<char, 2> neighbor_symbols(const ProteinGraph& g, std::size_t i, int& count) {
    std::array<char, 2> out{};
    count = 0;
    if (i > 0) out[count++] = g.seq[i - 1];
    if (i + 1 < g.seq.size()) out[count++] = g.seq[i + 1];
    return out;
}

}  // namespace

double neighborhood_similarity(const ProteinGraph& g1, std::size_t u, const ProteinGraph& g2,
                               std::size_t v) {
    int c1 = 0, c2 = 0;
    const auto n1 = neighbor_symbols(g1, u, c1);
    const auto n2 = neighbor_symbols(g2, v, c2);
    if (c1 == 0 && c2 == 0) return 1.0;

    std::array<int, 26> h1{}, h2{};
    for (int k = 0; k < c1; ++k) h1[n1[static_cast<std::size_t>(k)] - 'A'] += 1;
    for (int k = 0; k < c2; ++k) h2[n2[static_cast<std::size_t>(k)] - 'A'] += 1;
    int inter = 0, uni = 0;
    for (int s = 0; s < 26; ++s) {
        inter += std::min(h1[s], h2[s]);
        uni += std::max(h1[s], h2[s]);
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

ConflictGraph build_conflict_graph(const ProteinGraph& g1, const ProteinGraph& g2,
                                   const ConflictParams& p, std::size_t vertex_cap) {
    p.validate();
    if (vertex_cap == 0) throw Error("vertex cap must be >= 1");

    ConflictGraph g;
    g.n1 = g1.size();
    g.n2 = g2.size();

    for (std::size_t u = 0; u < g1.size(); ++u) {
        for (std::size_t v = 0; v < g2.size(); ++v) {
            const double vs = vertex_similarity(g1, u, g2, v);
            if (vs <= 0.0) continue;
            const double ns = neighborhood_similarity(g1, u, g2, v);
            const double combined = (1.0 - p.w_sim) * vs + p.w_sim * ns;
            if (combined + 1e-12 < p.min_sim) continue;
            g.vertices.push_back({u, v, combined + p.w_edges * ns, combined, ns});
        }
    }

    if (g.vertices.size() > vertex_cap) {
        std::stable_sort(g.vertices.begin(), g.vertices.end(),
                         [](const ConflictVertex& a, const ConflictVertex& b) {
                             if (a.combined != b.combined) return a.combined > b.combined;
                             if (a.u != b.u) return a.u < b.u;
                             return a.v < b.v;
                         });
        g.vertices.resize(vertex_cap);
        std::sort(g.vertices.begin(), g.vertices.end(),
                  [](const ConflictVertex& a, const ConflictVertex& b) {
                      if (a.u != b.u) return a.u < b.u;
                      return a.v < b.v;
                  });
    }

    for (std::size_t a = 0; a < g.vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
            const ConflictVertex& va = g.vertices[a];
            const ConflictVertex& vb = g.vertices[b];
            if (va.u == vb.u || va.v == vb.v) {
                g.edges.push_back({a, b, 0.0, ConflictEdgeKind::Conflict});
                continue;
            }
            const bool adj1 = (va.u > vb.u ? va.u - vb.u : vb.u - va.u) == 1;
            const bool adj2 = (va.v > vb.v ? va.v - vb.v : vb.v - va.v) == 1;
            if (adj1 == adj2) {
                g.edges.push_back(
                    {a, b, p.w_edges * (va.nsim + vb.nsim) / 2.0, ConflictEdgeKind::Compatibility});
            }
        }
    }
    return g;
}

double conflict_score(const ConflictGraph& g, std::span<const std::uint8_t> selection,
                      double delta) {
    if (selection.size() != g.vertices.size()) throw Error("selection length mismatch");
    if (g.n1 == 0 || g.n2 == 0) throw Error("conflict graph over empty proteins");

    std::vector<std::uint8_t> seen1(g.n1, 0), seen2(g.n2, 0);
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t k = 0; k < selection.size(); ++k) {
        if (!selection[k]) continue;
        const ConflictVertex& v = g.vertices[k];
        if (!seen1[v.u]) {
            seen1[v.u] = 1;
            ++c1;
        }
        if (!seen2[v.v]) {
            seen2[v.v] = 1;
            ++c2;
        }
    }
    const double r1 = static_cast<double>(c1) / static_cast<double>(g.n1);
    const double r2 = static_cast<double>(c2) / static_cast<double>(g.n2);
    return delta * std::max(r1, r2) + (1.0 - delta) * std::min(r1, r2);
}

std::vector<double> adjacency_matrix(const ConflictGraph& g) {
    const std::size_t n = g.vertices.size();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) a[k * n + k] = g.vertices[k].weight;
    for (const auto& e : g.edges) {
        a[e.a * n + e.b] = e.weight;
        a[e.b * n + e.a] = e.weight;
    }
    return a;
}

void export_conflict_graph(const ConflictGraph& g, std::ostream& out) {
    char buf[128];
    out << "conflict-graph v1 " << g.n1 << ' ' << g.n2 << ' ' << g.vertices.size() << ' '
        << g.edges.size() << '\n';
    for (const auto& v : g.vertices) {
        std::snprintf(buf, sizeof(buf), "v %zu %zu %.17g %.17g\n", v.u, v.v, v.weight, v.combined);
        out << buf;
    }
    for (const auto& e : g.edges) {
        std::snprintf(buf, sizeof(buf), "e %zu %zu %.17g %c\n", e.a, e.b, e.weight,
                      e.kind == ConflictEdgeKind::Conflict ? 'x' : 'c');
        out << buf;
    }
}

}  // namespace qprot
