#pragma once

#include <array>
#include <string_view>

#include "qprot/errors.hpp"

namespace qprot {

inline constexpr int kAlphabetSize = 20;

// One-letter codes in basis-state order: A maps to |00000>, V to |10011>.
inline constexpr std::string_view kAminoLetters = "ARNDCQEGHILKMFPSTWYV";

struct AminoAcid {
    char symbol;
    int code;  // 5-bit basis-state index, 0..19
    const char* name;
};

const std::array<AminoAcid, kAlphabetSize>& alphabet();

bool is_standard_residue(char symbol);

// Letter -> basis-state code. Throws InvalidResidueError for anything outside
// the 20 uppercase standard letters (B, J, O, U, X, Z, lowercase, ...).
int encode_amino(char symbol);

// Basis-state code -> amino acid. Codes 20..31 carry zero amplitude by
// construction and raise OutOfAlphabetError; codes >= 32 are out of range.
const AminoAcid& decode_state(int code);

}  // namespace qprot
