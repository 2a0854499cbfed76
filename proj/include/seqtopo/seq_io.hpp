#pragma once

#include <cctype>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqtopo/alphabet.hpp"
#include "seqtopo/errors.hpp"

namespace seqtopo {

struct FastaRecord {
    std::string id;
    std::string raw;
};

/// What to do with characters outside the alphabet (IUPAC ambiguity codes,
/// gaps, ...). SKIP drops them; REJECT fails on the first one.
enum class AmbiguityPolicy { Skip, Reject };

inline AmbiguityPolicy ambiguity_policy_from_string(const std::string& s) {
    if (s == "skip") return AmbiguityPolicy::Skip;
    if (s == "reject") return AmbiguityPolicy::Reject;
    throw ConfigError("unknown ambiguity policy: " + s + " (expected skip|reject)");
}

/// FASTA parsing: records begin with '>'; sequence lines are concatenated
/// with surrounding whitespace stripped. Record order is preserved.
inline std::vector<FastaRecord> parse_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    long line_no = 0;
    bool have_record = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '>') {
            std::string header = line.substr(first + 1);
            // id = first whitespace-delimited token of the header
            std::size_t b = header.find_first_not_of(" \t");
            std::string id;
            if (b != std::string::npos) {
                std::size_t e = header.find_first_of(" \t", b);
                id = header.substr(b, e == std::string::npos ? std::string::npos : e - b);
            }
            if (id.empty())
                throw InputError("FASTA: empty header at line " + std::to_string(line_no));
            records.push_back(FastaRecord{std::move(id), ""});
            have_record = true;
        } else {
            if (!have_record)
                throw InputError("FASTA: sequence data before any '>' header at line " +
                                 std::to_string(line_no));
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) records.back().raw.push_back(c);
        }
    }
    for (const auto& r : records)
        if (r.raw.empty()) throw InputError("FASTA: record '" + r.id + "' has no sequence data");
    return records;
}

inline std::vector<FastaRecord> parse_fasta(const std::string& text) {
    std::istringstream in(text);
    return parse_fasta(in);
}

/// Plain-text mode: one sequence per line, ids auto-generated seq0, seq1, ...
inline std::vector<FastaRecord> parse_plain(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    long n = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string raw;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) raw.push_back(c);
        if (raw.empty()) continue;
        records.push_back(FastaRecord{"seq" + std::to_string(n++), std::move(raw)});
    }
    return records;
}

/// Case-folds to upper, maps RNA 'U' to 'T', applies the ambiguity policy.
/// REJECT errors cite the 1-based position of the offending character.
inline Sequence normalize(const std::string& id, const std::string& raw, AmbiguityPolicy policy,
                          const Alphabet& alphabet = Alphabet::dna()) {
    Sequence seq;
    seq.id = id;
    seq.codes.reserve(raw.size());
    const bool dna_like = alphabet.contains('T');
    for (std::size_t i = 0; i < raw.size(); ++i) {
        int code = alphabet.code_of(raw[i]);
        if (code < 0) {
            // case fold, RNA U -> T
            char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw[i])));
            if (dna_like && c == 'U') c = 'T';
            code = alphabet.code_of(c);
        }
        if (code < 0) {
            if (policy == AmbiguityPolicy::Reject)
                throw InputError("sequence '" + id + "': character '" + std::string(1, raw[i]) +
                                 "' outside alphabet at position " + std::to_string(i + 1));
            continue;
        }
        seq.codes.push_back(static_cast<std::uint8_t>(code));
    }
    if (seq.codes.empty())
        throw InputError("sequence '" + id + "' is empty after normalization");
    return seq;
}

/// Deduplicates repeated ids by appending ".2", ".3", ... to later copies.
inline void dedupe_ids(std::vector<FastaRecord>& records) {
    std::map<std::string, int> seen;
    for (auto& r : records) {
        int& n = seen[r.id];
        ++n;
        if (n > 1) r.id += "." + std::to_string(n);
    }
}

inline std::vector<Sequence> load_records(std::istream& in, bool plain, AmbiguityPolicy policy,
                                          const Alphabet& alphabet = Alphabet::dna()) {
    auto records = plain ? parse_plain(in) : parse_fasta(in);
    dedupe_ids(records);
    std::vector<Sequence> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(normalize(r.id, r.raw, policy, alphabet));
    return out;
}

}  // namespace seqtopo
