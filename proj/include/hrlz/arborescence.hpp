#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hrlz/costgraph.hpp"

namespace hrlz {

/// Rooted spanning tree over sequence ids, as a parent map.
struct Arborescence {
    SeqId root = 0;
    std::vector<SeqId> parent;  // indexed by id (1..m); parent[root] == 0
    std::uint64_t weight = 0;   // sum of weight(parent(v), v) over non-roots

    bool operator==(const Arborescence&) const = default;
};

/// Minimum-weight spanning arborescence of a strongly connected graph, with
/// the root chosen freely. Implemented as Tarjan's contraction algorithm over
/// per-node two-level heaps of incoming edges. Equal-weight incoming edges
/// are resolved toward the lexicographically smaller (src, dst), so the
/// result is deterministic. Throws "graph not strongly connected" when the
/// precondition fails.
Arborescence mwsa(const CostGraph& graph);

/// MWSA of the graph augmented with a virtual root s and edges (s, i) of
/// weight root_costs[i-1], which makes the optimization also pick which node
/// to use as tree root by its stand-alone cost. Returns the arborescence on
/// the original m nodes; the reported weight excludes the chosen root's cost.
Arborescence mwsa_virtual_root(const CostGraph& graph,
                               const std::vector<std::uint64_t>& root_costs);

/// Debug dump: `child parent weight` per non-root line plus `root -1 0`,
/// 0-based ids.
void write_tree(std::ostream& out, const Arborescence& tree, const CostGraph& graph);

}  // namespace hrlz
