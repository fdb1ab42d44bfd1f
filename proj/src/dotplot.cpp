#include "qprot/dotplot.hpp"

namespace qprot {

DotplotMatrix dotplot(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty()) throw Error("dotplot needs nonempty sequences");
    DotplotMatrix m;
    m.rows = a.size();
    m.cols = b.size();
    m.bits.assign(m.rows * m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (a[i] == b[j]) m.bits[i * m.cols + j] = 1;
    return m;
}

void write_pgm(const DotplotMatrix& m, std::ostream& out) {
    out << "P5\n" << m.cols << ' ' << m.rows << "\n255\n";
    for (std::uint8_t bit : m.bits) out.put(bit ? '\0' : static_cast<char>(255));
}

void write_ascii(const DotplotMatrix& m, std::ostream& out) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) out.put(m.at(i, j) ? '#' : '.');
        out.put('\n');
    }
}

}  // namespace qprot
