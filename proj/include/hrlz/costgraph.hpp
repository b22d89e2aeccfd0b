#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "hrlz/collection.hpp"

namespace hrlz {

struct WeightedEdge {
    SeqId src = 0;
    SeqId dst = 0;
    std::uint64_t weight = 0;

    bool operator==(const WeightedEdge&) const = default;
};

/// Directed graph over sequence ids; weight(i,j) is the phrase count of the
/// greedy parse of sequence j against reference i.
struct CostGraph {
    std::uint32_t node_count = 0;
    std::vector<WeightedEdge> edges;
};

/// Parameters of the min-hash sparsification loop.
struct LshParams {
    std::uint64_t kmer_length = 256;  // k
    std::uint32_t hash_count = 4;     // q, hash functions per round
    std::uint32_t prune_period = 10;  // c, prune the active set every c rounds
    std::uint64_t seed = 0;
    std::uint32_t max_rounds = 1000;  // safety cap before the fallback kicks in
};

/// Per-round min-hash sketch: one minimum per hash function.
struct Fingerprint {
    std::vector<std::uint64_t> minima;

    bool operator==(const Fingerprint&) const = default;
};

/// Counters for the string-parsing work a graph construction performed.
struct ParseWork {
    std::size_t matchers = 0;
    std::size_t parses = 0;
};

// Hashing primitives, exposed so callers can recompute fingerprints from
// first principles.

/// Reduces a k-mer (or any short string) to a 64-bit word via a polynomial
/// rolling hash with a fixed odd base, wrapping mod 2^64.
std::uint64_t kmer_word(std::string_view kmer);

/// Multiply-shift universal hash of one word: (a * x) >> 32 for odd a.
std::uint64_t multiply_shift(std::uint64_t word, std::uint64_t odd_multiplier);

/// The q odd multipliers a round derives from its seed.
std::vector<std::uint64_t> round_multipliers(std::uint32_t hash_count, std::uint64_t round_seed);

/// Seed for round `round` (1-based) of a run seeded with `seed`.
std::uint64_t round_seed(std::uint64_t seed, std::uint32_t round);

/// Fingerprint of one sequence: for each hash function, the minimum over all
/// k-mers (over the single whole-string word when |S| < k).
Fingerprint fingerprint(std::string_view sequence, const LshParams& params,
                        std::uint64_t round_seed);

/// All m(m-1) ordered-pair weights, computed with one matcher per reference.
CostGraph complete_cost_graph(const Collection& collection, unsigned threads = 1,
                              ParseWork* work = nullptr);

/// Min-hash sparsified cost graph: repeatedly fingerprints the active set
/// with fresh per-round hash functions, links groups of equal fingerprints
/// (capped at ceil(2*sqrt(m)) members), and periodically shrinks the active
/// set to one representative per connected component, until the edge set is
/// strongly connected. Edge weights are then computed exactly.
CostGraph sparse_cost_graph(const Collection& collection, const LshParams& params,
                            unsigned threads = 1, ParseWork* work = nullptr);

/// True iff every node reaches every other along directed edges.
bool is_strongly_connected(std::uint32_t node_count, const std::vector<WeightedEdge>& edges);
bool is_strongly_connected(const CostGraph& graph);

/// Debug dump, one `src,dst,weight` line per edge with 0-based ids.
void write_edge_csv(std::ostream& out, const CostGraph& graph);

}  // namespace hrlz
