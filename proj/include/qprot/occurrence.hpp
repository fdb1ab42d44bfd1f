#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "qprot/fasta.hpp"

namespace qprot {

// Position-wise amino-acid occurrence matrix. Row i counts residues observed
// at position i over all proteins of length > i; probabilities are derived on
// demand (counts[i][j] / support[i]) and never stored.
class OccurrenceMatrix {
public:
    OccurrenceMatrix() = default;
    OccurrenceMatrix(std::size_t positions, std::vector<std::uint64_t> counts,
                     std::vector<std::uint64_t> support);

    std::size_t positions() const { return positions_; }
    std::uint64_t count(std::size_t i, std::size_t j) const { return counts_[i * 20 + j]; }
    std::uint64_t support(std::size_t i) const { return support_[i]; }
    const std::vector<std::uint64_t>& raw_counts() const { return counts_; }
    const std::vector<std::uint64_t>& raw_support() const { return support_; }

    double prob(std::size_t i, std::size_t j) const;

    // Rows with support > 0 form a prefix (support is monotone non-increasing).
    std::size_t populated_positions() const;

    // Copy of row i as a length-20 probability vector. Throws OutOfSupportError
    // for i >= positions() or empty rows.
    std::vector<double> row_distribution(std::size_t i) const;

    // Lossless binary cache. source_tag links a cache to its input file.
    std::uint64_t source_tag = 0;

private:
    std::size_t positions_ = 0;
    std::vector<std::uint64_t> counts_;   // positions x 20
    std::vector<std::uint64_t> support_;  // positions
};

OccurrenceMatrix build_occurrence(const Database& db, std::size_t max_positions = 2048);

void save_matrix(const OccurrenceMatrix& m, std::ostream& out);
OccurrenceMatrix load_matrix(std::istream& in);  // throws CacheInvalidError

void export_probs_csv(const OccurrenceMatrix& m, std::ostream& out);

// FNV-1a, used as the cache's source checksum and integrity check.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 0xCBF29CE484222325ULL);
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace qprot
