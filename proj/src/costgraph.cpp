#include "hrlz/costgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hrlz/parallel.hpp"
#include "hrlz/parse.hpp"

namespace hrlz {

namespace {

constexpr std::uint64_t kRollingBase = 0x100000001b3ULL;  // odd

struct Dsu {
    std::vector<std::uint32_t> parent;
    std::uint32_t components;

    explicit Dsu(std::uint32_t n) : parent(n), components(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        --components;
        return true;
    }
};

struct FingerprintHash {
    std::size_t operator()(const std::vector<std::uint64_t>& minima) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t v : minima) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// Weights for a batch of ordered pairs, one matcher per distinct source.
// `by_source` must be sorted by source id; targets may be in any order.
void compute_edge_weights(const Collection& collection,
                          const std::vector<std::pair<SeqId, std::vector<SeqId>>>& by_source,
                          CostGraph& graph, unsigned threads, ParseWork* work) {
    std::vector<std::vector<std::uint64_t>> weights(by_source.size());
    detail::parallel_for(by_source.size(), threads, [&](std::size_t i) {
        const auto& [src, dsts] = by_source[i];
        const Matcher matcher(collection.sequences[src - 1]);
        weights[i].reserve(dsts.size());
        for (SeqId dst : dsts)
            weights[i].push_back(greedy_parse(matcher, collection.sequences[dst - 1]).z());
    });
    for (std::size_t i = 0; i < by_source.size(); ++i) {
        const auto& [src, dsts] = by_source[i];
        for (std::size_t j = 0; j < dsts.size(); ++j)
            graph.edges.push_back(WeightedEdge{src, dsts[j], weights[i][j]});
        if (work) {
            ++work->matchers;
            work->parses += dsts.size();
        }
    }
}

}  // namespace

std::uint64_t kmer_word(std::string_view kmer) {
    std::uint64_t h = 0;
    for (unsigned char c : kmer) h = h * kRollingBase + (c + 1);
    return h;
}

std::uint64_t multiply_shift(std::uint64_t word, std::uint64_t odd_multiplier) {
    return (word * odd_multiplier) >> 32;
}

std::vector<std::uint64_t> round_multipliers(std::uint32_t hash_count, std::uint64_t round_seed) {
    std::mt19937_64 rng(round_seed);
    std::vector<std::uint64_t> multipliers(hash_count);
    for (auto& a : multipliers) a = rng() | 1;
    return multipliers;
}

std::uint64_t round_seed(std::uint64_t seed, std::uint32_t round) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(round) + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

Fingerprint fingerprint(std::string_view sequence, const LshParams& params,
                        std::uint64_t round_seed) {
    const auto multipliers = round_multipliers(params.hash_count, round_seed);
    Fingerprint fp;
    fp.minima.assign(multipliers.size(), std::numeric_limits<std::uint64_t>::max());

    auto take = [&](std::uint64_t word) {
        for (std::size_t i = 0; i < multipliers.size(); ++i)
            fp.minima[i] = std::min(fp.minima[i], multiply_shift(word, multipliers[i]));
    };

    const std::uint64_t k = params.kmer_length;
    if (sequence.size() < k) {
        take(kmer_word(sequence));
        return fp;
    }
    std::uint64_t lead = 1;  // kRollingBase^(k-1)
    for (std::uint64_t i = 1; i < k; ++i) lead *= kRollingBase;
    std::uint64_t h = kmer_word(sequence.substr(0, k));
    take(h);
    for (std::size_t t = 1; t + k <= sequence.size(); ++t) {
        const auto out = static_cast<unsigned char>(sequence[t - 1]);
        const auto in = static_cast<unsigned char>(sequence[t + k - 1]);
        h = (h - (std::uint64_t(out) + 1) * lead) * kRollingBase + (in + 1);
        take(h);
    }
    return fp;
}

CostGraph complete_cost_graph(const Collection& collection, unsigned threads, ParseWork* work) {
    const std::uint32_t m = collection.size();
    if (m == 0) throw std::invalid_argument("empty collection");
    CostGraph graph;
    graph.node_count = m;
    if (m == 1) return graph;

    std::vector<std::pair<SeqId, std::vector<SeqId>>> by_source;
    by_source.reserve(m);
    for (SeqId src = 1; src <= m; ++src) {
        std::vector<SeqId> dsts;
        dsts.reserve(m - 1);
        for (SeqId dst = 1; dst <= m; ++dst)
            if (dst != src) dsts.push_back(dst);
        by_source.emplace_back(src, std::move(dsts));
    }
    graph.edges.reserve(static_cast<std::size_t>(m) * (m - 1));
    compute_edge_weights(collection, by_source, graph, threads, work);
    return graph;
}

CostGraph sparse_cost_graph(const Collection& collection, const LshParams& params,
                            unsigned threads, ParseWork* work) {
    const std::uint32_t m = collection.size();
    if (m == 0) throw std::invalid_argument("empty collection");
    if (params.kmer_length < 1 || params.hash_count < 1 || params.prune_period < 1)
        throw std::invalid_argument("invalid LSH parameters");
    CostGraph graph;
    graph.node_count = m;
    if (m == 1) return graph;

    const auto cap = static_cast<std::uint64_t>(std::ceil(2.0 * std::sqrt(double(m))));
    Dsu dsu(m + 1);
    dsu.components = m;  // ids are 1-based; slot 0 is unused
    std::unordered_set<std::uint64_t> pairs;
    auto link = [&](SeqId a, SeqId b) {
        if (a > b) std::swap(a, b);
        if (pairs.insert((std::uint64_t(a) << 32) | b).second) dsu.unite(a, b);
    };
    auto connected = [&] { return dsu.components == 1; };

    std::vector<std::int64_t> collisions(m + 1, 0);
    std::vector<SeqId> active(m);
    std::iota(active.begin(), active.end(), 1u);

    for (std::uint32_t round = 1; !connected() && round <= params.max_rounds; ++round) {
        // Step 1: fresh hash functions, fingerprint the active set.
        const std::uint64_t rseed = round_seed(params.seed, round);
        std::vector<Fingerprint> prints(active.size());
        detail::parallel_for(active.size(), threads, [&](std::size_t i) {
            prints[i] = fingerprint(collection.sequences[active[i] - 1], params, rseed);
        });

        // Step 2: link every ordered pair within a group of equal
        // fingerprints, ignoring groups larger than the cap. Only strings in
        // surviving groups accumulate collision credit.
        std::unordered_map<std::vector<std::uint64_t>, std::vector<SeqId>, FingerprintHash> groups;
        for (std::size_t i = 0; i < active.size(); ++i)
            groups[prints[i].minima].push_back(active[i]);
        for (const auto& [minima, members] : groups) {
            if (members.size() < 2 || members.size() > cap) continue;
            for (SeqId id : members) collisions[id] += static_cast<std::int64_t>(members.size());
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    link(members[i], members[j]);
        }
        if (connected()) break;

        // Step 3: every c-th round shrink the active set to the
        // highest-collision string of each connected component (lowest id on
        // ties). Once small enough, complete the remainder and stop.
        if (round % params.prune_period == 0) {
            std::unordered_map<std::uint32_t, SeqId> best;
            for (SeqId id : active) {  // ascending, so ties keep the lowest id
                const std::uint32_t component = dsu.find(id);
                auto [it, inserted] = best.emplace(component, id);
                if (!inserted && collisions[id] > collisions[it->second]) it->second = id;
            }
            active.clear();
            for (const auto& [component, id] : best) active.push_back(id);
            std::sort(active.begin(), active.end());
            if (active.size() <= cap) {
                for (std::size_t i = 0; i < active.size(); ++i)
                    for (std::size_t j = i + 1; j < active.size(); ++j)
                        link(active[i], active[j]);
                break;
            }
        }
    }

    if (!connected()) {
        // Round cap exhausted: star the highest-collision string into every
        // component that is still separate from it.
        SeqId hub = 1;
        for (SeqId id = 2; id <= m; ++id)
            if (collisions[id] > collisions[hub]) hub = id;
        for (SeqId id = 1; id <= m; ++id)
            if (dsu.find(id) != dsu.find(hub)) link(hub, id);
    }

    // Expand the symmetric pair set into directed edges grouped by source.
    std::vector<std::vector<SeqId>> dsts(m + 1);
    std::vector<std::uint64_t> keys(pairs.begin(), pairs.end());
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
        const auto a = static_cast<SeqId>(key >> 32);
        const auto b = static_cast<SeqId>(key & 0xffffffffu);
        dsts[a].push_back(b);
        dsts[b].push_back(a);
    }
    std::vector<std::pair<SeqId, std::vector<SeqId>>> by_source;
    for (SeqId src = 1; src <= m; ++src) {
        if (dsts[src].empty()) continue;
        std::sort(dsts[src].begin(), dsts[src].end());
        by_source.emplace_back(src, std::move(dsts[src]));
    }
    graph.edges.reserve(2 * pairs.size());
    compute_edge_weights(collection, by_source, graph, threads, work);
    return graph;
}

bool is_strongly_connected(std::uint32_t node_count, const std::vector<WeightedEdge>& edges) {
    if (node_count <= 1) return true;
    std::vector<std::vector<std::uint32_t>> fwd(node_count + 1), rev(node_count + 1);
    for (const WeightedEdge& e : edges) {
        if (e.src < 1 || e.src > node_count || e.dst < 1 || e.dst > node_count)
            throw std::invalid_argument("edge endpoint out of range");
        fwd[e.src].push_back(e.dst);
        rev[e.dst].push_back(e.src);
    }
    auto reaches_all = [&](const std::vector<std::vector<std::uint32_t>>& adj) {
        std::vector<std::uint8_t> seen(node_count + 1, 0);
        std::vector<std::uint32_t> stack{1};
        seen[1] = 1;
        std::uint32_t count = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == node_count;
    };
    return reaches_all(fwd) && reaches_all(rev);
}

bool is_strongly_connected(const CostGraph& graph) {
    return is_strongly_connected(graph.node_count, graph.edges);
}

void write_edge_csv(std::ostream& out, const CostGraph& graph) {
    for (const WeightedEdge& e : graph.edges)
        out << (e.src - 1) << ',' << (e.dst - 1) << ',' << e.weight << '\n';
}

}  // namespace hrlz
