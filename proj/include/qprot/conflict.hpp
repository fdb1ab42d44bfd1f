#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qprot/errors.hpp"

namespace qprot {

// A protein as a path graph: vertices are residues, edges are peptide bonds.
struct ProteinGraph {
    std::string seq;

    std::size_t size() const { return seq.size(); }
    int degree(std::size_t i) const {
        if (seq.size() == 1) return 0;
        return (i == 0 || i + 1 == seq.size()) ? 1 : 2;
    }
};

ProteinGraph protein_graph(const std::string& seq);

struct ConflictParams {
    double w_sim = 0.30;    // weight between vertex- and neighborhood-similarity
    double min_sim = 0.75;  // threshold on the combined measure
    double w_edges = 1.00;  // weight of edge-derived contributions
    double delta = 0.25;    // max/min mix in the coverage score

    void validate() const;
};

// (symbol match + degree match) / 2.
double vertex_similarity(const ProteinGraph& g1, std::size_t u, const ProteinGraph& g2,
                         std::size_t v);

// Multiset Jaccard overlap of the neighbor symbol sets; empty/empty is 1.
double neighborhood_similarity(const ProteinGraph& g1, std::size_t u, const ProteinGraph& g2,
                               std::size_t v);

struct ConflictVertex {
    std::size_t u;    // residue index in protein 1
    std::size_t v;    // residue index in protein 2
    double weight;    // w~ = combined + w_edges * neighborhood similarity
    double combined;  // (1-w_sim)*vertex + w_sim*neighborhood
    double nsim;
};

enum class ConflictEdgeKind { Compatibility, Conflict };

struct ConflictEdge {
    std::size_t a, b;  // vertex indices, a < b
    double weight;     // conflict edges are weighted at QUBO build
    ConflictEdgeKind kind;
};

struct ConflictGraph {
    std::size_t n1 = 0;  // |V1|
    std::size_t n2 = 0;  // |V2|
    std::vector<ConflictVertex> vertices;
    std::vector<ConflictEdge> edges;
};

// Vertices: residue pairs whose combined measure clears min_sim (capped at
// vertex_cap, keeping the highest combined measures). Edges: a conflict edge
// when two mappings claim the same residue, a compatibility edge when they
// are linked the same way in both proteins.
ConflictGraph build_conflict_graph(const ProteinGraph& g1, const ProteinGraph& g2,
                                   const ConflictParams& p, std::size_t vertex_cap = 4096);

// Coverage score of a selection: delta * max(V1cg/|V1|, V2cg/|V2|) +
// (1-delta) * min(...), counting distinct residues of each protein among the
// selected vertices.
double conflict_score(const ConflictGraph& g, std::span<const std::uint8_t> selection,
                      double delta);

// Dense symmetric adjacency matrix: diagonal w~, off-diagonal edge weights.
std::vector<double> adjacency_matrix(const ConflictGraph& g);

// Line-oriented dump (vertices then edges) for debugging and golden tests.
void export_conflict_graph(const ConflictGraph& g, std::ostream& out);

}  // namespace qprot
