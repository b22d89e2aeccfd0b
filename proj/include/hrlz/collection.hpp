#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace hrlz {

// Sequence ids are 1-based positions in the collection. 0 is reserved as a
// sentinel (no parent / virtual root).
using SeqId = std::uint32_t;

/// An ordered, immutable set of named byte sequences.
struct Collection {
    std::vector<std::string> sequences;
    std::vector<std::string> names;

    // Ingestion metadata carried through to archives so that file-level
    // round trips are byte-exact.
    bool trailing_newline = true;
    bool from_fasta = false;

    std::uint32_t size() const { return static_cast<std::uint32_t>(sequences.size()); }

    std::uint64_t total_length() const {
        std::uint64_t n = 0;
        for (const auto& s : sequences) n += s.size();
        return n;
    }

    bool operator==(const Collection&) const = default;
};

// FASTA: records start with a '>' header line; the record's sequence is the
// concatenation of the following non-header lines with line breaks removed.
// All other bytes are preserved verbatim.
Collection parse_fasta(std::string_view text);
Collection load_fasta(const std::string& path);

// Plain text: one sequence per line, names synthesized as "seq1".."seqm".
// A final line without a trailing newline still counts as a record.
Collection parse_lines(std::string_view text);
Collection load_lines(const std::string& path);

// Inverse writers used by decompression; both honor `trailing_newline`.
// FASTA output places each sequence on a single line.
std::string to_fasta(const Collection& collection);
std::string to_lines(const Collection& collection);

}  // namespace hrlz
