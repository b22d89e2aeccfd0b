#include "hrlz/codec.hpp"

#include <algorithm>
#include <stdexcept>

#include "hrlz/parallel.hpp"
#include "hrlz/varint.hpp"

namespace hrlz {

namespace {

constexpr char kMagic[4] = {'H', 'R', 'L', 'Z'};
constexpr unsigned char kVersion = 0x01;
constexpr unsigned char kFlagTrailingNewline = 0x01;
constexpr unsigned char kFlagNamesPresent = 0x02;

void copy_ingest_metadata(Archive& archive, const Collection& collection) {
    archive.m = collection.size();
    archive.trailing_newline = collection.trailing_newline;
    archive.names_present = collection.from_fasta;
    if (archive.names_present) archive.names = collection.names;
}

std::vector<std::uint64_t> sequence_lengths(const Collection& collection) {
    std::vector<std::uint64_t> lengths;
    lengths.reserve(collection.size());
    for (const auto& s : collection.sequences) lengths.push_back(s.size());
    return lengths;
}

}  // namespace

std::vector<SeqId> bfs_order(std::uint32_t m, SeqId root, const std::vector<SeqId>& parent) {
    if (root < 1 || root > m) throw std::runtime_error("corrupt archive: root out of range");
    std::vector<std::vector<SeqId>> children(m + 1);
    for (SeqId v = 1; v <= m; ++v) {
        if (v == root) continue;
        const SeqId p = v < parent.size() ? parent[v] : 0;
        if (p < 1 || p > m || p == v)
            throw std::runtime_error("corrupt archive: bad parent id");
        children[p].push_back(v);  // ascending v, so child order is ascending
    }
    std::vector<SeqId> order;
    order.reserve(m);
    order.push_back(root);
    for (std::size_t head = 0; head < order.size(); ++head)
        for (SeqId c : children[order[head]]) order.push_back(c);
    if (order.size() != m) throw std::runtime_error("corrupt archive: tree does not span");
    return order;
}

std::vector<SeqId> bfs_order(const Archive& archive) {
    if (archive.mode == Archive::Mode::Hrlz)
        return bfs_order(archive.m, archive.root, archive.parent);
    // rlz is a star: the reference first, everyone else in id order
    if (archive.root < 1 || archive.root > archive.m)
        throw std::runtime_error("corrupt archive: root out of range");
    std::vector<SeqId> order;
    order.reserve(archive.m);
    order.push_back(archive.root);
    for (SeqId v = 1; v <= archive.m; ++v)
        if (v != archive.root) order.push_back(v);
    return order;
}

Archive compress_rlz(const Collection& collection, SeqId reference, unsigned threads) {
    const std::uint32_t m = collection.size();
    if (m == 0) throw std::runtime_error("empty collection");
    if (reference < 1 || reference > m)
        throw std::out_of_range("reference id out of range");

    Archive archive;
    archive.mode = Archive::Mode::Rlz;
    copy_ingest_metadata(archive, collection);
    archive.root = reference;
    archive.root_sequence = collection.sequences[reference - 1];
    archive.parsings.resize(m);

    std::vector<SeqId> targets;
    targets.reserve(m - 1);
    for (SeqId v = 1; v <= m; ++v)
        if (v != reference) targets.push_back(v);

    const Matcher matcher(archive.root_sequence);
    detail::parallel_for(targets.size(), threads, [&](std::size_t i) {
        const SeqId v = targets[i];
        archive.parsings[v - 1] = greedy_parse(matcher, collection.sequences[v - 1]);
    });
    return archive;
}

Archive compress_hrlz(const Collection& collection, const Arborescence& tree, unsigned threads) {
    const std::uint32_t m = collection.size();
    if (m == 0) throw std::runtime_error("empty collection");
    if (tree.root < 1 || tree.root > m || tree.parent.size() != m + 1 ||
        tree.parent[tree.root] != 0)
        throw std::runtime_error("not an arborescence");
    try {
        bfs_order(m, tree.root, tree.parent);
    } catch (const std::exception&) {
        throw std::runtime_error("not an arborescence");
    }

    Archive archive;
    archive.mode = Archive::Mode::Hrlz;
    copy_ingest_metadata(archive, collection);
    archive.root = tree.root;
    archive.parent = tree.parent;
    archive.root_sequence = collection.sequences[tree.root - 1];
    archive.parsings.resize(m);

    // One matcher per parent, shared by all of its children.
    std::vector<std::vector<SeqId>> children(m + 1);
    for (SeqId v = 1; v <= m; ++v)
        if (v != tree.root) children[tree.parent[v]].push_back(v);
    std::vector<SeqId> parents;
    for (SeqId p = 1; p <= m; ++p)
        if (!children[p].empty()) parents.push_back(p);

    detail::parallel_for(parents.size(), threads, [&](std::size_t i) {
        const SeqId p = parents[i];
        const Matcher matcher(collection.sequences[p - 1]);
        for (SeqId v : children[p])
            archive.parsings[v - 1] = greedy_parse(matcher, collection.sequences[v - 1]);
    });
    return archive;
}

Archive compress_optimal(const Collection& collection, bool root_cost_aware, unsigned threads) {
    const CostGraph graph = complete_cost_graph(collection, threads);
    const Arborescence tree = root_cost_aware
                                  ? mwsa_virtual_root(graph, sequence_lengths(collection))
                                  : mwsa(graph);
    return compress_hrlz(collection, tree, threads);
}

Archive compress_approx(const Collection& collection, const LshParams& params,
                        bool root_cost_aware, unsigned threads) {
    const CostGraph graph = sparse_cost_graph(collection, params, threads);
    const Arborescence tree = root_cost_aware
                                  ? mwsa_virtual_root(graph, sequence_lengths(collection))
                                  : mwsa(graph);
    return compress_hrlz(collection, tree, threads);
}

Collection decompress(const Archive& archive) {
    const std::uint32_t m = archive.m;
    if (m == 0) throw std::runtime_error("corrupt archive: no sequences");
    if (archive.parsings.size() != m)
        throw std::runtime_error("corrupt archive: parsing count mismatch");
    if (archive.names_present && archive.names.size() != m)
        throw std::runtime_error("corrupt archive: name count mismatch");

    const std::vector<SeqId> order = bfs_order(archive);
    std::vector<std::string> sequences(m);
    sequences[archive.root - 1] = archive.root_sequence;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const SeqId v = order[i];
        const SeqId p = archive.mode == Archive::Mode::Hrlz ? archive.parent[v] : archive.root;
        try {
            sequences[v - 1] = decode(sequences[p - 1], archive.parsings[v - 1]);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("corrupt archive: ") + e.what());
        }
    }

    Collection collection;
    collection.sequences = std::move(sequences);
    collection.trailing_newline = archive.trailing_newline;
    collection.from_fasta = archive.names_present;
    if (archive.names_present) {
        collection.names = archive.names;
    } else {
        collection.names.reserve(m);
        for (std::uint32_t i = 0; i < m; ++i)
            collection.names.push_back("seq" + std::to_string(i + 1));
    }
    return collection;
}

std::string serialize(const Archive& archive) {
    std::string out;
    out.append(kMagic, sizeof kMagic);
    out.push_back(static_cast<char>(kVersion));
    out.push_back(static_cast<char>(archive.mode));
    unsigned char flags = 0;
    if (archive.trailing_newline) flags |= kFlagTrailingNewline;
    if (archive.names_present) flags |= kFlagNamesPresent;
    out.push_back(static_cast<char>(flags));

    put_varint(out, archive.m);
    put_varint(out, archive.root - 1);
    if (archive.mode == Archive::Mode::Hrlz) {
        for (SeqId v = 1; v <= archive.m; ++v)
            if (v != archive.root) put_varint(out, archive.parent[v] - 1);
    }
    if (archive.names_present) {
        for (const auto& name : archive.names) {
            put_varint(out, name.size());
            out.append(name);
        }
    }
    put_varint(out, archive.root_sequence.size());
    out.append(archive.root_sequence);

    const std::vector<SeqId> order = bfs_order(archive);
    for (std::size_t i = 1; i < order.size(); ++i) {
        const Parsing& parsing = archive.parsings[order[i] - 1];
        put_varint(out, parsing.z());
        for (const Phrase& p : parsing.phrases) {
            if (p.kind == Phrase::Kind::Copy) {
                put_varint(out, p.start);  // 1-based start == 0-based wire start + 1
                put_varint(out, p.length);
            } else {
                put_varint(out, 0);
                out.push_back(static_cast<char>(p.symbol));
            }
        }
    }
    return out;
}

Archive deserialize(std::string_view bytes) {
    std::size_t pos = 0;
    auto need = [&](std::size_t count) {
        if (bytes.size() - pos < count)
            throw std::runtime_error("corrupt archive file: truncated");
    };
    need(7);
    if (bytes.compare(0, 4, kMagic, 4) != 0)
        throw std::runtime_error("corrupt archive file: bad magic");
    if (static_cast<unsigned char>(bytes[4]) != kVersion)
        throw std::runtime_error("corrupt archive file: unsupported version");
    const auto mode_byte = static_cast<unsigned char>(bytes[5]);
    if (mode_byte > 1) throw std::runtime_error("corrupt archive file: bad mode");
    const auto flags = static_cast<unsigned char>(bytes[6]);
    if (flags & ~(kFlagTrailingNewline | kFlagNamesPresent))
        throw std::runtime_error("corrupt archive file: unknown flags");
    pos = 7;

    Archive archive;
    archive.mode = static_cast<Archive::Mode>(mode_byte);
    archive.trailing_newline = flags & kFlagTrailingNewline;
    archive.names_present = flags & kFlagNamesPresent;

    const std::uint64_t m64 = get_varint(bytes, pos);
    // every sequence beyond the first occupies at least one byte (its parent
    // or phrase-count varint), so a count past the file size is forged
    if (m64 < 1 || m64 > 0xffffffffu || m64 > bytes.size())
        throw std::runtime_error("corrupt archive file: bad sequence count");
    archive.m = static_cast<std::uint32_t>(m64);
    const std::uint64_t root0 = get_varint(bytes, pos);
    if (root0 >= archive.m)
        throw std::runtime_error("corrupt archive file: bad root id");
    archive.root = static_cast<SeqId>(root0 + 1);

    if (archive.mode == Archive::Mode::Hrlz) {
        archive.parent.assign(archive.m + 1, 0);
        for (SeqId v = 1; v <= archive.m; ++v) {
            if (v == archive.root) continue;
            const std::uint64_t p0 = get_varint(bytes, pos);
            if (p0 >= archive.m)
                throw std::runtime_error("corrupt archive file: bad parent id");
            archive.parent[v] = static_cast<SeqId>(p0 + 1);
        }
    }
    if (archive.names_present) {
        archive.names.reserve(archive.m);
        for (std::uint32_t i = 0; i < archive.m; ++i) {
            const std::uint64_t len = get_varint(bytes, pos);
            need(len);
            archive.names.emplace_back(bytes.substr(pos, len));
            pos += len;
        }
    }
    {
        const std::uint64_t len = get_varint(bytes, pos);
        need(len);
        archive.root_sequence = std::string(bytes.substr(pos, len));
        pos += len;
    }

    archive.parsings.resize(archive.m);
    const std::vector<SeqId> order = bfs_order(archive);
    for (std::size_t i = 1; i < order.size(); ++i) {
        Parsing& parsing = archive.parsings[order[i] - 1];
        const std::uint64_t z = get_varint(bytes, pos);
        if (z > bytes.size() - pos)  // every phrase takes at least one byte
            throw std::runtime_error("corrupt archive file: bad phrase count");
        parsing.phrases.reserve(z);
        for (std::uint64_t k = 0; k < z; ++k) {
            const std::uint64_t start = get_varint(bytes, pos);
            if (start == 0) {
                need(1);
                parsing.phrases.push_back(
                    Phrase::literal(static_cast<unsigned char>(bytes[pos++])));
                parsing.target_length += 1;
            } else {
                const std::uint64_t length = get_varint(bytes, pos);
                if (length == 0)
                    throw std::runtime_error("corrupt archive file: zero-length copy");
                parsing.phrases.push_back(Phrase::copy(start, length));
                parsing.target_length += length;
            }
        }
    }
    if (pos != bytes.size())
        throw std::runtime_error("corrupt archive file: trailing data");
    return archive;
}

Stats stats(const Archive& archive) {
    Stats s;
    s.total_phrases = archive.total_phrases();
    s.phrase_counts.reserve(archive.m);
    for (const Parsing& p : archive.parsings) s.phrase_counts.push_back(p.z());

    s.depths.assign(archive.m, 0);
    const std::vector<SeqId> order = bfs_order(archive);
    for (std::size_t i = 1; i < order.size(); ++i) {
        const SeqId v = order[i];
        const SeqId p = archive.mode == Archive::Mode::Hrlz ? archive.parent[v] : archive.root;
        s.depths[v - 1] = s.depths[p - 1] + 1;
        s.max_depth = std::max(s.max_depth, s.depths[v - 1]);
    }
    std::uint64_t depth_sum = 0;
    for (std::uint32_t d : s.depths) depth_sum += d;
    s.avg_depth = archive.m ? static_cast<double>(depth_sum) / archive.m : 0.0;
    return s;
}

}  // namespace hrlz
