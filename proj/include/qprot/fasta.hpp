#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qprot/errors.hpp"

namespace qprot {

struct ProteinRecord {
    std::string db_tag;      // "sp"/"tr" for UniProt headers, empty otherwise
    std::string accession;
    std::string entry_id;
    std::string protein_name;
    std::string organism;
    std::string organism_taxid;               // may be empty
    std::optional<int> existence_level;       // PE, 1..5
    std::optional<int> sequence_version;      // SV
    std::string sequence;                     // residue letters, file order

    std::size_t raw_length() const { return sequence.size(); }
    bool all_standard() const;
    std::vector<int> codes() const;           // throws InvalidResidueError
};

class Database {
public:
    Database() = default;
    explicit Database(std::vector<ProteinRecord> records);

    const std::vector<ProteinRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const ProteinRecord& at(std::size_t i) const { return records_.at(i); }

    // First record with this entry_id, or nullptr.
    const ProteinRecord* find(const std::string& entry_id) const;

private:
    std::vector<ProteinRecord> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

struct ParseReport {
    std::size_t records = 0;                 // records kept
    std::vector<std::string> rejected_ids;   // empty-sequence records dropped at parse
    std::size_t rejected() const { return rejected_ids.size(); }
};

// Parses UniProt-style FASTA. Full `>db|ACC|ID NAME OS=.. OX=.. PE=.. SV=..`
// headers are decomposed; bare `>token` headers yield accession == entry_id.
// Sequence data before any header is a ParseError; a header with an empty
// sequence is a per-record rejection recorded in the report.
Database parse_fasta(std::istream& in, ParseReport* report = nullptr);
Database parse_fasta_file(const std::string& path, ParseReport* report = nullptr);

// Canonical serialization; parse_fasta(to_fasta(db)) is field-identical.
void to_fasta(const Database& db, std::ostream& out);

struct FilterResult {
    Database db;
    std::vector<std::string> rejected_ids;
};

// Keeps only records whose sequences are entirely standard residues.
FilterResult filter_standard(const Database& db);

}  // namespace qprot
