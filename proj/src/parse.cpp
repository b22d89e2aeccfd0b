#include "hrlz/parse.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace hrlz {

namespace {

// Suffix array by rank doubling with counting sorts, O(n log n).
std::vector<std::int32_t> build_suffix_array(std::string_view text) {
    const auto n = static_cast<std::int32_t>(text.size());
    std::vector<std::int32_t> sa(n), rank(n), next_rank(n);
    if (n == 0) return sa;

    {
        std::vector<std::int32_t> bucket(257, 0);
        for (unsigned char c : text) ++bucket[c + 1];
        for (int i = 1; i <= 256; ++i) bucket[i] += bucket[i - 1];
        for (std::int32_t i = 0; i < n; ++i)
            sa[bucket[static_cast<unsigned char>(text[i])]++] = i;
        rank[sa[0]] = 0;
        for (std::int32_t i = 1; i < n; ++i)
            rank[sa[i]] = rank[sa[i - 1]] + (text[sa[i]] != text[sa[i - 1]] ? 1 : 0);
    }

    std::vector<std::int32_t> order(n), bucket;
    for (std::int32_t len = 1; rank[sa[n - 1]] != n - 1; len <<= 1) {
        // Suffixes ordered by second half: those whose second half is empty
        // come first, the rest follow the previous pass's order.
        std::int32_t fill = 0;
        for (std::int32_t i = n - len; i < n; ++i) order[fill++] = i;
        for (std::int32_t i = 0; i < n; ++i)
            if (sa[i] >= len) order[fill++] = sa[i] - len;

        // Stable counting sort by first-half rank.
        bucket.assign(static_cast<std::size_t>(n) + 1, 0);
        for (std::int32_t i = 0; i < n; ++i) ++bucket[rank[i] + 1];
        for (std::int32_t i = 1; i <= n; ++i) bucket[i] += bucket[i - 1];
        for (std::int32_t i = 0; i < n; ++i) sa[bucket[rank[order[i]]]++] = order[i];

        next_rank[sa[0]] = 0;
        for (std::int32_t i = 1; i < n; ++i) {
            const std::int32_t a = sa[i - 1], b = sa[i];
            bool same = rank[a] == rank[b];
            if (same) {
                const std::int32_t ra = a + len < n ? rank[a + len] : -1;
                const std::int32_t rb = b + len < n ? rank[b + len] : -1;
                same = ra == rb;
            }
            next_rank[b] = next_rank[a] + (same ? 0 : 1);
        }
        rank.swap(next_rank);
    }
    return sa;
}

}  // namespace

Matcher::Matcher(std::string_view reference) : ref_(reference) {
    if (ref_.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
        throw std::length_error("reference too large for matcher index");
    sa_ = build_suffix_array(ref_);
}

Matcher::Match Matcher::longest_match(std::string_view target, std::size_t pos) const {
    const auto n = static_cast<std::int32_t>(ref_.size());
    std::int32_t lo = 0, hi = n;
    std::size_t len = 0;

    // Invariant: suffixes sa_[lo..hi) are exactly those starting with
    // target[pos..pos+len). Extend one character at a time by binary
    // searching the subrange whose next character matches; within the range
    // the next characters are nondecreasing (exhausted suffixes first).
    while (pos + len < target.size() && lo < hi) {
        const int want = static_cast<unsigned char>(target[pos + len]);
        auto next_char = [&](std::int32_t idx) -> int {
            const std::int32_t p = sa_[idx] + static_cast<std::int32_t>(len);
            return p < n ? static_cast<unsigned char>(ref_[p]) : -1;
        };
        std::int32_t a = lo, b = hi;
        while (a < b) {
            const std::int32_t mid = a + (b - a) / 2;
            if (next_char(mid) < want) a = mid + 1; else b = mid;
        }
        const std::int32_t new_lo = a;
        b = hi;
        while (a < b) {
            const std::int32_t mid = a + (b - a) / 2;
            if (next_char(mid) <= want) a = mid + 1; else b = mid;
        }
        if (new_lo == a) break;
        lo = new_lo;
        hi = a;
        ++len;
    }
    if (len == 0) return Match{0, 0};
    return Match{len, static_cast<std::uint64_t>(sa_[lo])};
}

Matcher build_matcher(std::string_view reference) { return Matcher(reference); }

Parsing greedy_parse(const Matcher& matcher, std::string_view target) {
    Parsing parsing;
    parsing.target_length = target.size();
    std::size_t pos = 0;
    while (pos < target.size()) {
        const Matcher::Match m = matcher.longest_match(target, pos);
        if (m.length == 0) {
            parsing.phrases.push_back(Phrase::literal(static_cast<unsigned char>(target[pos])));
            ++pos;
        } else {
            parsing.phrases.push_back(Phrase::copy(m.position + 1, m.length));
            pos += m.length;
        }
    }
    return parsing;
}

std::string decode(std::string_view reference, const Parsing& parsing) {
    std::string out;
    out.reserve(parsing.target_length);
    for (const Phrase& p : parsing.phrases) {
        if (p.kind == Phrase::Kind::Literal) {
            out.push_back(static_cast<char>(p.symbol));
            continue;
        }
        if (p.start < 1 || p.length < 1 || p.start - 1 > reference.size() ||
            p.length > reference.size() - (p.start - 1))
            throw std::runtime_error("corrupt parsing: copy phrase out of range");
        out.append(reference.substr(p.start - 1, p.length));
    }
    if (out.size() != parsing.target_length)
        throw std::runtime_error("corrupt parsing: decoded length mismatch");
    return out;
}

}  // namespace hrlz
