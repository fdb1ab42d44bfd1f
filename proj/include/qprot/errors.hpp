#pragma once

#include <stdexcept>
#include <string>

namespace qprot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A residue letter outside the 20-letter standard alphabet.
struct InvalidResidueError : Error {
    explicit InvalidResidueError(char symbol)
        : Error(std::string("invalid residue letter '") + symbol + "'"), symbol(symbol) {}
    char symbol;
};

// A 5-bit measurement outcome in 20..31 (zero-amplitude states by construction).
struct OutOfAlphabetError : Error {
    explicit OutOfAlphabetError(int code)
        : Error("basis state " + std::to_string(code) + " has no amino acid"), code(code) {}
    int code;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

struct CacheInvalidError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

struct OutOfSupportError : Error {
    using Error::Error;
};

struct InvalidDistributionError : Error {
    using Error::Error;
};

struct DegenerateReferenceError : Error {
    using Error::Error;
};

}  // namespace qprot
