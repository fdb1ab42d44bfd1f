#include "qprot/occurrence.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

#include "qprot/amino.hpp"

namespace qprot {

namespace {

constexpr std::uint32_t kMagic = 0x434F5051;  // "QPOC" little-endian
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
    // explicit little-endian
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!in) throw CacheInvalidError("occurrence cache truncated");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
        if (!in) break;
    }
    return h;
}

OccurrenceMatrix::OccurrenceMatrix(std::size_t positions, std::vector<std::uint64_t> counts,
                                   std::vector<std::uint64_t> support)
    : positions_(positions), counts_(std::move(counts)), support_(std::move(support)) {
    if (counts_.size() != positions_ * 20 || support_.size() != positions_)
        throw Error("occurrence matrix shape mismatch");
}

double OccurrenceMatrix::prob(std::size_t i, std::size_t j) const {
    const std::uint64_t s = support_[i];
    return s == 0 ? 0.0 : static_cast<double>(counts_[i * 20 + j]) / static_cast<double>(s);
}

std::size_t OccurrenceMatrix::populated_positions() const {
    std::size_t n = 0;
    while (n < positions_ && support_[n] > 0) ++n;
    return n;
}

std::vector<double> OccurrenceMatrix::row_distribution(std::size_t i) const {
    if (i >= positions_ || support_[i] == 0)
        throw OutOfSupportError("no distribution at position " + std::to_string(i));
    std::vector<double> row(20);
    for (std::size_t j = 0; j < 20; ++j) row[j] = prob(i, j);
    return row;
}

OccurrenceMatrix build_occurrence(const Database& db, std::size_t max_positions) {
    if (max_positions == 0) throw Error("max_positions must be >= 1");
    if (db.empty()) throw Error("cannot build occurrence matrix from an empty database");

    std::size_t longest = 0;
    for (const auto& rec : db.records()) longest = std::max(longest, rec.raw_length());
    const std::size_t x = std::min(max_positions, longest);

    std::vector<std::uint64_t> counts(x * 20, 0);
    std::vector<std::uint64_t> support(x, 0);
    for (const auto& rec : db.records()) {
        const std::size_t n = std::min(rec.raw_length(), x);
        for (std::size_t i = 0; i < n; ++i) {
            counts[i * 20 + static_cast<std::size_t>(encode_amino(rec.sequence[i]))] += 1;
            support[i] += 1;
        }
    }
    return OccurrenceMatrix(x, std::move(counts), std::move(support));
}

void save_matrix(const OccurrenceMatrix& m, std::ostream& out) {
    put<std::uint32_t>(out, kMagic);
    put<std::uint32_t>(out, kVersion);
    put<std::uint64_t>(out, m.source_tag);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.positions()));

    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto hash64 = [&h](std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
        h = fnv1a(b, 8, h);
    };
    for (std::uint64_t v : m.raw_support()) {
        put<std::uint64_t>(out, v);
        hash64(v);
    }
    for (std::uint64_t v : m.raw_counts()) {
        put<std::uint64_t>(out, v);
        hash64(v);
    }
    put<std::uint64_t>(out, h);
}

OccurrenceMatrix load_matrix(std::istream& in) {
    if (get<std::uint32_t>(in) != kMagic) throw CacheInvalidError("occurrence cache: bad magic");
    if (get<std::uint32_t>(in) != kVersion) throw CacheInvalidError("occurrence cache: unsupported version");
    const std::uint64_t tag = get<std::uint64_t>(in);
    const std::uint64_t x = get<std::uint64_t>(in);
    if (x > (1ULL << 32)) throw CacheInvalidError("occurrence cache: implausible size");

    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto hash64 = [&h](std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
        h = fnv1a(b, 8, h);
    };
    std::vector<std::uint64_t> support(x), counts(x * 20);
    for (auto& v : support) {
        v = get<std::uint64_t>(in);
        hash64(v);
    }
    for (auto& v : counts) {
        v = get<std::uint64_t>(in);
        hash64(v);
    }
    if (get<std::uint64_t>(in) != h) throw CacheInvalidError("occurrence cache: checksum mismatch");

    OccurrenceMatrix m(static_cast<std::size_t>(x), std::move(counts), std::move(support));
    m.source_tag = tag;
    return m;
}

void export_probs_csv(const OccurrenceMatrix& m, std::ostream& out) {
    out << "position";
    for (int j = 0; j < kAlphabetSize; ++j) out << ',' << kAminoLetters[static_cast<std::size_t>(j)];
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < m.positions(); ++i) {
        out << i;
        for (std::size_t j = 0; j < 20; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.prob(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace qprot
