#include "hrlz/arborescence.hpp"

#include <cassert>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hrlz/two_level_heap.hpp"

namespace hrlz {

namespace {

// Edge carried through the heaps. src 0 denotes the virtual super-root; ties
// between equal keys resolve toward the smaller (src, dst).
struct EdgeRef {
    SeqId src = 0;
    SeqId dst = 0;
    std::uint64_t weight = 0;  // original weight, untouched by re-weighting

    friend bool operator<(const EdgeRef& a, const EdgeRef& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    }
};

using EdgeHeap = TwoLevelHeap<EdgeRef>;

struct Dsu {
    std::vector<std::uint32_t> parent;

    explicit Dsu(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void absorb(std::uint32_t node, std::uint32_t super) { parent[find(node)] = super; }
};

// Tarjan's contraction algorithm rooted at node 0 (the virtual super-root).
// Nodes 1..m are the graph nodes; contractions allocate fresh supernode ids.
// Returns the selected original edges, one entering each of 1..m.
std::vector<EdgeRef> contract_rooted(std::uint32_t m, const std::vector<EdgeRef>& all_edges) {
    const std::uint32_t n = m + 1;
    const std::uint32_t slots = 2 * n;

    std::vector<EdgeHeap> queue(slots);
    {
        std::vector<std::vector<EdgeHeap::Element>> incoming(n);
        for (const EdgeRef& e : all_edges)
            incoming[e.dst].push_back({static_cast<std::int64_t>(e.weight), e});
        for (std::uint32_t v = 1; v < n; ++v) queue[v] = EdgeHeap(std::move(incoming[v]));
    }

    Dsu dsu(slots);
    enum : std::uint8_t { kNew = 0, kOnPath = 1, kDone = 2 };
    std::vector<std::uint8_t> state(slots, kNew);
    state[0] = kDone;

    std::vector<EdgeRef> entering(slots);           // chosen edge per supernode
    std::vector<std::int64_t> entering_cost(slots); // its reduced key at extraction
    std::vector<std::int32_t> enclosing(slots, -1); // contraction forest parent
    std::vector<std::vector<std::uint32_t>> members(slots);
    std::uint32_t next_super = n;

    std::vector<std::uint32_t> path;
    for (std::uint32_t start = 1; start < n; ++start) {
        std::uint32_t cur = dsu.find(start);
        if (state[cur] != kNew) continue;
        path.clear();
        for (;;) {
            state[cur] = kOnPath;
            path.push_back(cur);

            // Minimum incoming edge from outside the current supernode.
            EdgeHeap::Element picked;
            for (;;) {
                if (queue[cur].empty())
                    throw std::runtime_error("graph not strongly connected");
                picked = queue[cur].extract_min();
                if (dsu.find(picked.payload.src) != cur) break;  // else: self-loop, drop
            }
            entering[cur] = picked.payload;
            entering_cost[cur] = picked.key;

            const std::uint32_t next = dsu.find(picked.payload.src);
            if (state[next] == kNew) {
                cur = next;
                continue;
            }
            if (state[next] == kDone) {
                for (std::uint32_t x : path) state[x] = kDone;
                break;
            }

            // The chosen edge closes a cycle along the current path;
            // contract it into a fresh supernode. Incoming edges of each
            // member are re-weighted by the cost of the cycle edge the outer
            // choice would displace, then all queues are merged.
            const std::uint32_t super = next_super++;
            assert(super < slots);
            EdgeHeap merged;
            for (;;) {
                const std::uint32_t member = path.back();
                path.pop_back();
                state[member] = kDone;
                enclosing[member] = static_cast<std::int32_t>(super);
                members[super].push_back(member);
                queue[member].add(-entering_cost[member]);
                merged = EdgeHeap::meld(std::move(merged), std::move(queue[member]));
                dsu.absorb(member, super);
                if (member == next) break;
            }
            queue[super] = std::move(merged);
            cur = super;  // loop head pushes the supernode onto the path
        }
    }

    // Dismantle the contraction forest, outermost supernodes first. The
    // member an entering edge lands in drops its cycle edge; every other
    // member keeps its own.
    std::vector<EdgeRef> final_edges;
    final_edges.reserve(m);
    std::vector<std::pair<std::uint32_t, EdgeRef>> stack;
    for (std::uint32_t x = 1; x < next_super; ++x)
        if (enclosing[x] == -1) stack.emplace_back(x, entering[x]);
    while (!stack.empty()) {
        auto [node, edge] = stack.back();
        stack.pop_back();
        if (node < n) {
            assert(edge.dst == node);
            final_edges.push_back(edge);
            continue;
        }
        std::uint32_t landing = edge.dst;
        while (enclosing[landing] != static_cast<std::int32_t>(node)) {
            landing = static_cast<std::uint32_t>(enclosing[landing]);
        }
        for (std::uint32_t member : members[node]) {
            if (member == landing)
                stack.emplace_back(member, edge);
            else
                stack.emplace_back(member, entering[member]);
        }
    }
    assert(final_edges.size() == m);
    return final_edges;
}

Arborescence solve(const CostGraph& graph, const std::vector<std::uint64_t>& virtual_costs) {
    const std::uint32_t m = graph.node_count;
    Arborescence tree;
    tree.parent.assign(m + 1, 0);
    if (m == 1) {
        tree.root = 1;
        return tree;
    }
    if (!is_strongly_connected(graph))
        throw std::runtime_error("graph not strongly connected");

    // Shift every virtual edge high enough that the optimum uses exactly one
    // of them; within single-virtual-edge solutions the shift is a constant
    // and does not change the argmin.
    std::uint64_t total = 1;
    for (const WeightedEdge& e : graph.edges) total += e.weight;
    for (std::uint64_t c : virtual_costs) total += c;
    if (total > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) / 4)
        throw std::overflow_error("edge weights too large");
    const std::uint64_t big = total;

    std::vector<EdgeRef> edges;
    edges.reserve(graph.edges.size() + m);
    for (const WeightedEdge& e : graph.edges) {
        if (e.src < 1 || e.src > m || e.dst < 1 || e.dst > m || e.src == e.dst)
            throw std::invalid_argument("invalid cost graph edge");
        edges.push_back(EdgeRef{e.src, e.dst, e.weight});
    }
    for (SeqId v = 1; v <= m; ++v)
        edges.push_back(EdgeRef{0, v, big + virtual_costs[v - 1]});

    std::uint32_t virtual_uses = 0;
    for (const EdgeRef& e : contract_rooted(m, edges)) {
        if (e.src == 0) {
            tree.root = e.dst;
            ++virtual_uses;
        } else {
            tree.parent[e.dst] = e.src;
            tree.weight += e.weight;
        }
    }
    assert(virtual_uses == 1);
    (void)virtual_uses;
    return tree;
}

}  // namespace

Arborescence mwsa(const CostGraph& graph) {
    if (graph.node_count == 0) throw std::invalid_argument("empty graph");
    return solve(graph, std::vector<std::uint64_t>(graph.node_count, 0));
}

Arborescence mwsa_virtual_root(const CostGraph& graph,
                               const std::vector<std::uint64_t>& root_costs) {
    if (graph.node_count == 0) throw std::invalid_argument("empty graph");
    if (root_costs.size() != graph.node_count)
        throw std::invalid_argument("root_costs size mismatch");
    return solve(graph, root_costs);
}

void write_tree(std::ostream& out, const Arborescence& tree, const CostGraph& graph) {
    std::unordered_map<std::uint64_t, std::uint64_t> weight;
    weight.reserve(graph.edges.size());
    for (const WeightedEdge& e : graph.edges)
        weight[(std::uint64_t(e.src) << 32) | e.dst] = e.weight;
    out << (tree.root - 1) << " -1 0\n";
    for (SeqId v = 1; v < tree.parent.size(); ++v) {
        if (v == tree.root) continue;
        const SeqId p = tree.parent[v];
        out << (v - 1) << ' ' << (p - 1) << ' ' << weight[(std::uint64_t(p) << 32) | v] << '\n';
    }
}

}  // namespace hrlz
