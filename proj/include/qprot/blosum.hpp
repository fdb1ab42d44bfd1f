#pragma once

#include <array>
#include <string>

#include "qprot/amino.hpp"

namespace qprot {

struct SubstitutionMatrix {
    std::array<std::array<int, kAlphabetSize>, kAlphabetSize> scores;
    std::string name;

    int score(int a_code, int b_code) const {
        return scores[static_cast<std::size_t>(a_code)][static_cast<std::size_t>(b_code)];
    }
    int score_symbols(char a, char b) const { return score(encode_amino(a), encode_amino(b)); }
};

const SubstitutionMatrix& blosum62();

}  // namespace qprot
