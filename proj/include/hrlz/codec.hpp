#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hrlz/arborescence.hpp"
#include "hrlz/collection.hpp"
#include "hrlz/costgraph.hpp"
#include "hrlz/parse.hpp"

namespace hrlz {

/// Serialized-form compressed representation: the root (or reference)
/// sequence stored raw, the tree shape, and one parsing per remaining
/// sequence, each relative to its parent.
struct Archive {
    enum class Mode : std::uint8_t { Rlz = 0, Hrlz = 1 };

    Mode mode = Mode::Rlz;
    std::uint32_t m = 0;
    bool trailing_newline = true;
    bool names_present = false;
    std::vector<std::string> names;  // all m names when names_present
    SeqId root = 1;
    std::vector<SeqId> parent;  // hrlz only: indexed by id, parent[root] == 0
    std::string root_sequence;
    std::vector<Parsing> parsings;  // indexed by id-1; the root slot stays empty

    std::uint64_t total_phrases() const {
        std::uint64_t z = 0;
        for (const auto& p : parsings) z += p.z();
        return z;
    }

    bool operator==(const Archive&) const = default;
};

/// Phrase counts and tree-shape figures of one archive.
struct Stats {
    std::uint64_t total_phrases = 0;
    std::vector<std::uint64_t> phrase_counts;  // per node, indexed by id-1
    std::vector<std::uint32_t> depths;         // per node, root depth 0
    double avg_depth = 0.0;
    std::uint32_t max_depth = 0;
};

/// Single-reference compression: the reference is stored raw and every other
/// sequence is parsed against it. Equivalent to a star tree rooted at `ref`.
Archive compress_rlz(const Collection& collection, SeqId reference, unsigned threads = 1);

/// Parses every non-root sequence against its tree parent.
/// Throws "not an arborescence" if the tree does not span 1..m.
Archive compress_hrlz(const Collection& collection, const Arborescence& tree,
                      unsigned threads = 1);

/// Complete cost graph -> MWSA -> hierarchical parse. With `root_cost_aware`
/// the tree root is chosen through a virtual root whose edge to node i costs
/// |S_i|, so the raw-stored sequence's length enters the objective.
Archive compress_optimal(const Collection& collection, bool root_cost_aware = false,
                         unsigned threads = 1);

/// LSH-sparsified cost graph -> MWSA -> hierarchical parse.
Archive compress_approx(const Collection& collection, const LshParams& params,
                        bool root_cost_aware = false, unsigned threads = 1);

/// Rebuilds all m sequences byte-exactly, decoding children in BFS order so
/// a parent is always materialized first. Throws "corrupt archive" on
/// out-of-range phrases or a parent map that does not span the tree.
Collection decompress(const Archive& archive);

/// Bit-exact wire form; see the README for the byte layout.
std::string serialize(const Archive& archive);

/// Inverse of serialize. Throws "corrupt archive file" on bad magic,
/// truncation, or malformed varints.
Archive deserialize(std::string_view bytes);

Stats stats(const Archive& archive);

/// Order in which parsings are laid out on the wire and decoded: root first,
/// children appended in ascending id order. Throws "corrupt archive" if the
/// parent map has a cycle or misses nodes.
std::vector<SeqId> bfs_order(std::uint32_t m, SeqId root, const std::vector<SeqId>& parent);
std::vector<SeqId> bfs_order(const Archive& archive);

}  // namespace hrlz
