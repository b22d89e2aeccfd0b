#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hrlz {

/// One unit of a factorization: either a copy of reference bytes
/// [start, start+length-1] (1-based) or a single literal byte that does not
/// occur in the reference.
struct Phrase {
    enum class Kind : std::uint8_t { Copy, Literal };

    Kind kind = Kind::Copy;
    std::uint64_t start = 0;   // copy only, 1-based position in the reference
    std::uint64_t length = 0;  // copy only, >= 1
    unsigned char symbol = 0;  // literal only

    static Phrase copy(std::uint64_t start, std::uint64_t length) {
        return Phrase{Kind::Copy, start, length, 0};
    }
    static Phrase literal(unsigned char symbol) {
        return Phrase{Kind::Literal, 0, 0, symbol};
    }

    bool operator==(const Phrase&) const = default;
};

/// A full left-to-right factorization of one target string.
struct Parsing {
    std::vector<Phrase> phrases;
    std::uint64_t target_length = 0;

    std::uint64_t z() const { return phrases.size(); }

    bool operator==(const Parsing&) const = default;
};

/// Longest-match index over one reference string.
///
/// Backed by a suffix array with per-character interval refinement, so a
/// query for the remaining target costs O(match_length * log |R|). The
/// matcher owns a copy of the reference and is immutable after construction;
/// concurrent queries are safe.
class Matcher {
public:
    Matcher() = default;
    explicit Matcher(std::string_view reference);

    struct Match {
        std::uint64_t length = 0;    // 0 when no character of the target prefix occurs in R
        std::uint64_t position = 0;  // 0-based start of the chosen occurrence
    };

    /// Longest prefix of target[pos..] occurring anywhere in the reference.
    /// Among equally long occurrences the one whose suffix is
    /// lexicographically smallest is reported, which makes parses
    /// deterministic.
    Match longest_match(std::string_view target, std::size_t pos) const;

    std::string_view reference() const { return ref_; }

private:
    std::string ref_;
    std::vector<std::int32_t> sa_;
};

Matcher build_matcher(std::string_view reference);

/// Greedy left-to-right parse of `target` into maximal reference substrings;
/// bytes absent from the reference become literal phrases.
Parsing greedy_parse(const Matcher& matcher, std::string_view target);

/// Inverse of greedy_parse. Throws "corrupt parsing" if a copy phrase is out
/// of range for this reference or the decoded length disagrees with the
/// parsing.
std::string decode(std::string_view reference, const Parsing& parsing);

}  // namespace hrlz
