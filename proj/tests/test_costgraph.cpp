#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "hrlz/arborescence.hpp"
#include "hrlz/costgraph.hpp"
#include "hrlz/parse.hpp"
#include "oracles.hpp"

using namespace hrlz;

namespace {

Collection make_collection(std::vector<std::string> sequences) {
    Collection c;
    for (std::size_t i = 0; i < sequences.size(); ++i)
        c.names.push_back("seq" + std::to_string(i + 1));
    c.sequences = std::move(sequences);
    return c;
}

std::uint64_t lookup(const CostGraph& g, SeqId src, SeqId dst) {
    for (const auto& e : g.edges)
        if (e.src == src && e.dst == dst) return e.weight;
    FAIL("edge not found");
    return 0;
}

}  // namespace

TEST_CASE("complete graph on two identical strings") {
    const CostGraph g = complete_cost_graph(make_collection({"ab", "ab"}));
    REQUIRE(g.edges.size() == 2);
    CHECK(lookup(g, 1, 2) == 1);
    CHECK(lookup(g, 2, 1) == 1);
}

TEST_CASE("complete graph weight matches the worked parse") {
    const CostGraph g = complete_cost_graph(make_collection({"actccta", "ctctcc"}));
    CHECK(lookup(g, 1, 2) == 2);
}

TEST_CASE("complete graph weights equal recomputed parses") {
    std::mt19937_64 rng(0xFEED);
    const std::uint32_t m = 5;
    Collection c;
    for (std::uint32_t i = 0; i < m; ++i) {
        c.sequences.push_back(oracles::random_string(rng, 30 + rng() % 50, 4));
        c.names.push_back("s");
    }
    ParseWork work;
    const CostGraph g = complete_cost_graph(c, 1, &work);
    CHECK(g.edges.size() == m * (m - 1));
    CHECK(work.matchers == m);
    CHECK(work.parses == m * (m - 1));
    for (const auto& e : g.edges) {
        const Matcher matcher(c.sequences[e.src - 1]);
        CHECK(e.weight == greedy_parse(matcher, c.sequences[e.dst - 1]).z());
    }
}

TEST_CASE("complete graph is identical across thread counts") {
    std::mt19937_64 rng(0x7EA);
    const Collection c = oracles::random_collection(rng, 9, 120, 4);
    const CostGraph serial = complete_cost_graph(c, 1);
    const CostGraph parallel = complete_cost_graph(c, 8);
    CHECK(serial.edges == parallel.edges);
}

TEST_CASE("fingerprints are deterministic") {
    const LshParams params{16, 4, 10, 99, 1000};
    const std::string s = "the quick brown fox jumps over the lazy dog";
    CHECK(fingerprint(s, params, 7) == fingerprint(s, params, 7));
    CHECK(fingerprint(s, params, 7) != fingerprint(s, params, 8));
}

TEST_CASE("short sequence falls back to a whole-string hash") {
    LshParams params;
    params.kmer_length = 256;
    params.hash_count = 3;
    const std::string s = "short";
    const Fingerprint fp = fingerprint(s, params, 5);
    const auto multipliers = round_multipliers(params.hash_count, 5);
    REQUIRE(fp.minima.size() == 3);
    for (std::size_t i = 0; i < multipliers.size(); ++i)
        CHECK(fp.minima[i] == multiply_shift(kmer_word(s), multipliers[i]));
}

TEST_CASE("fingerprint minima match independent k-mer enumeration") {
    LshParams params;
    params.kmer_length = 2;
    params.hash_count = 1;
    const std::string s = "abcd";
    const Fingerprint fp = fingerprint(s, params, 42);
    const auto multipliers = round_multipliers(params.hash_count, 42);
    std::uint64_t expected = multiply_shift(kmer_word("ab"), multipliers[0]);
    expected = std::min(expected, multiply_shift(kmer_word("bc"), multipliers[0]));
    expected = std::min(expected, multiply_shift(kmer_word("cd"), multipliers[0]));
    CHECK(fp.minima[0] == expected);
}

TEST_CASE("rolling window agrees with per-kmer hashing on random data") {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 50; ++iter) {
        LshParams params;
        params.kmer_length = 1 + rng() % 12;
        params.hash_count = 2;
        const auto s = oracles::random_string(rng, params.kmer_length + rng() % 40, 4);
        const auto multipliers = round_multipliers(params.hash_count, iter);
        const Fingerprint fp = fingerprint(s, params, iter);
        for (std::size_t h = 0; h < multipliers.size(); ++h) {
            std::uint64_t expected = ~0ULL;
            for (std::size_t t = 0; t + params.kmer_length <= s.size(); ++t)
                expected = std::min(expected,
                                    multiply_shift(kmer_word(std::string_view(s).substr(
                                                       t, params.kmer_length)),
                                                   multipliers[h]));
            CHECK(fp.minima[h] == expected);
        }
    }
}

TEST_CASE("strong connectivity checks") {
    CHECK(is_strongly_connected(2, {{1, 2, 0}, {2, 1, 0}}));
    CHECK(!is_strongly_connected(2, {{1, 2, 0}}));
    CHECK(is_strongly_connected(1, {}));
}

TEST_CASE("strong connectivity agrees with the reachability oracle") {
    std::mt19937_64 rng(0xD16);
    for (int iter = 0; iter < 300; ++iter) {
        const std::uint32_t m = 1 + rng() % 8;
        std::vector<WeightedEdge> edges;
        std::set<std::pair<SeqId, SeqId>> used;
        const std::uint32_t count = rng() % (m * m + 1);
        for (std::uint32_t i = 0; i < count; ++i) {
            const SeqId a = 1 + static_cast<SeqId>(rng() % m);
            const SeqId b = 1 + static_cast<SeqId>(rng() % m);
            if (a != b && used.insert({a, b}).second) edges.push_back({a, b, 0});
        }
        CHECK(is_strongly_connected(m, edges) ==
              oracles::reachability_strongly_connected(m, edges));
    }
}

TEST_CASE("default parameters match the reference configuration") {
    const LshParams params;
    CHECK(params.kmer_length == 256);
    CHECK(params.hash_count == 4);
    CHECK(params.prune_period == 10);
    CHECK(params.max_rounds == 1000);
}

TEST_CASE("sparse graph: single sequence needs no edges") {
    const CostGraph g = sparse_cost_graph(make_collection({"abc"}), LshParams{});
    CHECK(g.node_count == 1);
    CHECK(g.edges.empty());
}

TEST_CASE("sparse graph on identical strings within the group cap is complete") {
    LshParams params;
    params.kmer_length = 4;
    params.seed = 3;
    // cap is ceil(2*sqrt(4)) = 4, so the single group of 4 survives and
    // contributes every ordered pair in round one
    const Collection c = make_collection(std::vector<std::string>(4, "acgtacgtacgt"));
    const CostGraph g = sparse_cost_graph(c, params);
    CHECK(is_strongly_connected(g));
    CHECK(g.edges.size() == 4 * 3);
    for (const auto& e : g.edges) CHECK(e.weight == 1);
}

TEST_CASE("sparse graph on identical strings beyond the cap still connects") {
    LshParams params;
    params.kmer_length = 4;
    params.seed = 3;
    params.max_rounds = 30;
    // a group of 8 exceeds ceil(2*sqrt(8)) = 6 and is ignored every round;
    // the result must still come back strongly connected with unit weights
    const Collection c = make_collection(std::vector<std::string>(8, "acgtacgtacgt"));
    const CostGraph g = sparse_cost_graph(c, params);
    CHECK(is_strongly_connected(g));
    for (const auto& e : g.edges) CHECK(e.weight == 1);
}

TEST_CASE("sparse graph is a subgraph of the complete graph with exact weights") {
    const Collection c = oracles::clustered_collection(11, 3, 5, 600, 0.01, 0.15);
    LshParams params;
    params.kmer_length = 12;
    params.seed = 4;
    params.max_rounds = 64;
    const CostGraph sparse = sparse_cost_graph(c, params);
    CHECK(is_strongly_connected(sparse));
    CHECK(sparse.node_count == c.size());
    std::set<std::pair<SeqId, SeqId>> seen;
    for (const auto& e : sparse.edges) {
        CHECK(e.src != e.dst);
        CHECK(seen.insert({e.src, e.dst}).second);  // no duplicates
        const Matcher matcher(c.sequences[e.src - 1]);
        CHECK(e.weight == greedy_parse(matcher, c.sequences[e.dst - 1]).z());
    }
    CHECK(sparse.edges.size() <= static_cast<std::size_t>(c.size()) * (c.size() - 1));
}

TEST_CASE("sparse graph is deterministic for a fixed seed, across thread counts") {
    const Collection c = oracles::clustered_collection(5, 2, 6, 400, 0.02, 0.2);
    LshParams params;
    params.kmer_length = 10;
    params.seed = 21;
    params.max_rounds = 64;
    const CostGraph a = sparse_cost_graph(c, params, 1);
    const CostGraph b = sparse_cost_graph(c, params, 8);
    CHECK(a.edges == b.edges);
    params.seed = 22;
    const CostGraph other = sparse_cost_graph(c, params, 1);
    CHECK(is_strongly_connected(other));
}

TEST_CASE("sparse graph yields a tree within 15% of the complete-graph tree") {
    const Collection c = oracles::clustered_collection(30, 3, 10, 2000, 0.01, 0.078);
    LshParams params;
    params.kmer_length = 12;
    params.seed = 1;
    const CostGraph sparse = sparse_cost_graph(c, params);
    const CostGraph complete = complete_cost_graph(c);
    CHECK(sparse.edges.size() < complete.edges.size());
    const std::uint64_t sparse_weight = mwsa(sparse).weight;
    const std::uint64_t complete_weight = mwsa(complete).weight;
    CHECK(sparse_weight >= complete_weight);  // a subgraph cannot do better
    CHECK(static_cast<double>(sparse_weight) <= 1.15 * static_cast<double>(complete_weight));
}

TEST_CASE("sparse graph falls back to a hub star when rounds run out") {
    // random unrelated strings essentially never collide, so the round cap
    // triggers and the fallback must still deliver strong connectivity
    std::mt19937_64 rng(0x0DD);
    Collection c;
    for (int i = 0; i < 6; ++i) {
        c.sequences.push_back(oracles::random_string(rng, 200, 4));
        c.names.push_back("r");
    }
    LshParams params;
    params.kmer_length = 64;
    params.max_rounds = 5;
    const CostGraph g = sparse_cost_graph(c, params);
    CHECK(is_strongly_connected(g));
}

TEST_CASE("edge csv dump uses 0-based ids") {
    CostGraph g{2, {{1, 2, 3}, {2, 1, 4}}};
    std::ostringstream out;
    write_edge_csv(out, g);
    CHECK(out.str() == "0,1,3\n1,0,4\n");
}
