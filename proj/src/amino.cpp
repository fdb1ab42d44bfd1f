#include "qprot/amino.hpp"

namespace qprot {

const std::array<AminoAcid, kAlphabetSize>& alphabet() {
    static const std::array<AminoAcid, kAlphabetSize> table = {{
        {'A', 0, "Alanine"},
        {'R', 1, "Arginine"},
        {'N', 2, "Asparagine"},
        {'D', 3, "Aspartic acid"},
        {'C', 4, "Cysteine"},
        {'Q', 5, "Glutamine"},
        {'E', 6, "Glutamic acid"},
        {'G', 7, "Glycine"},
        {'H', 8, "Histidine"},
        {'I', 9, "Isoleucine"},
        {'L', 10, "Leucine"},
        {'K', 11, "Lysine"},
        {'M', 12, "Methionine"},
        {'F', 13, "Phenylalanine"},
        {'P', 14, "Proline"},
        {'S', 15, "Serine"},
        {'T', 16, "Threonine"},
        {'W', 17, "Tryptophan"},
        {'Y', 18, "Tyrosine"},
        {'V', 19, "Valine"},
    }};
    return table;
}

namespace {

// 'A'..'Z' -> code or -1.
constexpr std::array<int, 26> build_lookup() {
    std::array<int, 26> lut{};
    for (auto& v : lut) v = -1;
    for (int code = 0; code < kAlphabetSize; ++code) {
        lut[kAminoLetters[static_cast<std::size_t>(code)] - 'A'] = code;
    }
    return lut;
}

constexpr std::array<int, 26> kLookup = build_lookup();

}  // namespace

bool is_standard_residue(char symbol) {
    return symbol >= 'A' && symbol <= 'Z' && kLookup[symbol - 'A'] >= 0;
}

int encode_amino(char symbol) {
    if (!is_standard_residue(symbol)) throw InvalidResidueError(symbol);
    return kLookup[symbol - 'A'];
}

const AminoAcid& decode_state(int code) {
    if (code < 0 || code >= 32) throw Error("basis-state code " + std::to_string(code) + " out of 5-bit range");
    if (code >= kAlphabetSize) throw OutOfAlphabetError(code);
    return alphabet()[static_cast<std::size_t>(code)];
}

}  // namespace qprot
