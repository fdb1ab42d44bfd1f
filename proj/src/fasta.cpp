#include "qprot/fasta.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "qprot/amino.hpp"

namespace qprot {

bool ProteinRecord::all_standard() const {
    return std::all_of(sequence.begin(), sequence.end(), is_standard_residue);
}

std::vector<int> ProteinRecord::codes() const {
    std::vector<int> out;
    out.reserve(sequence.size());
    for (char c : sequence) out.push_back(encode_amino(c));
    return out;
}

Database::Database(std::vector<ProteinRecord> records) : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        by_id_.emplace(records_[i].entry_id, i);  // first occurrence wins
    }
}

const ProteinRecord* Database::find(const std::string& entry_id) const {
    auto it = by_id_.find(entry_id);
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

namespace {

std::string rstrip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    return s;
}

// Positions of the metadata keys UniProt appends after the protein name.
constexpr const char* kKeys[] = {" OS=", " OX=", " PE=", " SV="};

std::size_t next_key_pos(const std::string& s, std::size_t from) {
    std::size_t best = std::string::npos;
    for (const char* k : kKeys) {
        auto p = s.find(k, from);
        if (p != std::string::npos && p < best) best = p;
    }
    return best;
}

std::optional<int> parse_int_field(const std::string& v) {
    if (v.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != v.size()) return std::nullopt;
        return x;
    } catch (...) {
        return std::nullopt;
    }
}

ProteinRecord record_from_header(const std::string& header) {
    ProteinRecord rec;
    std::size_t ws = header.find_first_of(" \t");
    std::string token = header.substr(0, ws);
    std::string rest = ws == std::string::npos ? std::string() : header.substr(ws + 1);

    // db|ACC|ID shape?
    std::size_t p1 = token.find('|');
    std::size_t p2 = p1 == std::string::npos ? std::string::npos : token.find('|', p1 + 1);
    if (p1 != std::string::npos && p2 != std::string::npos && p2 > p1 + 1 && p1 > 0 && p2 + 1 < token.size() &&
        token.find('|', p2 + 1) == std::string::npos) {
        rec.db_tag = token.substr(0, p1);
        rec.accession = token.substr(p1 + 1, p2 - p1 - 1);
        rec.entry_id = token.substr(p2 + 1);
    } else {
        rec.accession = token;
        rec.entry_id = token;
        return rec;  // non-UniProt header: no metadata expected
    }

    std::size_t meta = next_key_pos(rest, 0);
    rec.protein_name = rstrip(rest.substr(0, meta == std::string::npos ? rest.size() : meta));
    while (meta != std::string::npos) {
        std::string key = rest.substr(meta + 1, 3);  // "OS=", ...
        std::size_t vstart = meta + 4;
        std::size_t vend = next_key_pos(rest, vstart);
        std::string value = rstrip(rest.substr(vstart, (vend == std::string::npos ? rest.size() : vend) - vstart));
        if (key == "OS=") rec.organism = value;
        else if (key == "OX=") rec.organism_taxid = value;
        else if (key == "PE=") rec.existence_level = parse_int_field(value);
        else if (key == "SV=") rec.sequence_version = parse_int_field(value);
        meta = vend;
    }
    return rec;
}

}  // namespace

Database parse_fasta(std::istream& in, ParseReport* report) {
    std::vector<ProteinRecord> records;
    ParseReport local;
    ProteinRecord current;
    bool in_record = false;

    auto flush = [&]() {
        if (!in_record) return;
        if (current.sequence.empty()) {
            local.rejected_ids.push_back(current.entry_id);
        } else {
            records.push_back(std::move(current));
        }
        current = ProteinRecord{};
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = rstrip(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            std::string header = rstrip(line.substr(1));
            if (header.empty()) throw ParseError("empty FASTA header", lineno);
            current = record_from_header(header);
            in_record = true;
        } else {
            if (!in_record) throw ParseError("sequence data before any '>' header", lineno);
            for (char c : line) {
                if (c == ' ' || c == '\t') continue;
                current.sequence.push_back(c);
            }
        }
    }
    flush();

    local.records = records.size();
    if (report) *report = local;
    return Database(std::move(records));
}

Database parse_fasta_file(const std::string& path, ParseReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open FASTA file: " + path);
    return parse_fasta(in, report);
}

void to_fasta(const Database& db, std::ostream& out) {
    for (const auto& rec : db.records()) {
        out << '>';
        if (!rec.db_tag.empty()) {
            out << rec.db_tag << '|' << rec.accession << '|' << rec.entry_id;
            if (!rec.protein_name.empty()) out << ' ' << rec.protein_name;
            if (!rec.organism.empty()) out << " OS=" << rec.organism;
            if (!rec.organism_taxid.empty()) out << " OX=" << rec.organism_taxid;
            if (rec.existence_level) out << " PE=" << *rec.existence_level;
            if (rec.sequence_version) out << " SV=" << *rec.sequence_version;
        } else {
            out << rec.entry_id;
        }
        out << '\n';
        for (std::size_t i = 0; i < rec.sequence.size(); i += 60) {
            out << rec.sequence.substr(i, 60) << '\n';
        }
    }
}

FilterResult filter_standard(const Database& db) {
    FilterResult result;
    std::vector<ProteinRecord> kept;
    for (const auto& rec : db.records()) {
        if (rec.all_standard()) kept.push_back(rec);
        else result.rejected_ids.push_back(rec.entry_id);
    }
    result.db = Database(std::move(kept));
    return result;
}

}  // namespace qprot
