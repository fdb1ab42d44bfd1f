#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qprot/errors.hpp"

namespace qprot {

// Bit (i,j) is set iff residue i of A equals residue j of B.
struct DotplotMatrix {
    std::size_t rows = 0;  // |A|
    std::size_t cols = 0;  // |B|
    std::vector<std::uint8_t> bits;

    bool at(std::size_t i, std::size_t j) const { return bits[i * cols + j] != 0; }
};

DotplotMatrix dotplot(const std::string& a, const std::string& b);

// Binary PGM (P5), dots black on white.
void write_pgm(const DotplotMatrix& m, std::ostream& out);
void write_ascii(const DotplotMatrix& m, std::ostream& out);

}  // namespace qprot
