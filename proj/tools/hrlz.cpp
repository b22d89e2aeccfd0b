#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hrlz/codec.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return std::move(buffer).str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read error: " + path);
    return std::move(buffer).str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("write error: stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw std::runtime_error("write error: " + path);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HRLZ_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("invalid HRLZ_SEED value");
        }
    }
    return 0;
}

struct CompressConfig {
    std::string input;
    std::string output;
    std::string mode;
    std::string format = "fasta";
    hrlz::SeqId reference = 0;
    hrlz::LshParams lsh;
    bool root_cost = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

int run_compress(const CompressConfig& config) {
    const std::string text = read_input(config.input);
    const hrlz::Collection collection = config.format == "fasta"
                                            ? hrlz::parse_fasta(text)
                                            : hrlz::parse_lines(text);

    const auto started = std::chrono::steady_clock::now();
    hrlz::Archive archive;
    if (config.mode == "rlz") {
        archive = hrlz::compress_rlz(collection, config.reference, config.threads);
    } else if (config.mode == "opt-hrlz") {
        archive = hrlz::compress_optimal(collection, config.root_cost, config.threads);
    } else {
        archive = hrlz::compress_approx(collection, config.lsh, config.root_cost, config.threads);
    }
    write_output(config.output, hrlz::serialize(archive));
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    const hrlz::Stats stats = hrlz::stats(archive);
    std::ostream& summary = config.output == "-" ? std::cerr : std::cout;
    summary << "mode=" << config.mode << " sequences=" << archive.m
            << " phrases=" << stats.total_phrases << " max_depth=" << stats.max_depth
            << " avg_depth=" << stats.avg_depth << " seconds=" << elapsed.count() << '\n';
    return 0;
}

int run_decompress(const std::string& input, const std::string& output) {
    const hrlz::Archive archive = hrlz::deserialize(read_input(input));
    const hrlz::Collection collection = hrlz::decompress(archive);
    write_output(output, collection.from_fasta ? hrlz::to_fasta(collection)
                                               : hrlz::to_lines(collection));
    return 0;
}

int run_stats(const std::string& input) {
    const hrlz::Archive archive = hrlz::deserialize(read_input(input));
    const hrlz::Stats stats = hrlz::stats(archive);
    std::cout << "sequences,total_phrases,avg_depth,max_depth\n"
              << archive.m << ',' << stats.total_phrases << ',' << stats.avg_depth << ','
              << stats.max_depth << "\n\nnode,z,depth\n";
    for (std::uint32_t i = 0; i < archive.m; ++i)
        std::cout << i << ',' << stats.phrase_counts[i] << ',' << stats.depths[i] << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tree-structured relative Lempel-Ziv compressor for collections of similar sequences"};
    app.require_subcommand(1);

    CompressConfig config;
    std::string archive_path;
    std::string output_path;

    auto* compress = app.add_subcommand("compress", "Compress a sequence collection into an archive");
    compress->add_option("input", config.input, "Input file ('-' for stdin)")->required();
    compress->add_option("output", config.output, "Archive file ('-' for stdout)")->required();
    compress->add_option("--mode", config.mode, "Compression mode")
        ->required()
        ->check(CLI::IsMember({"rlz", "opt-hrlz", "approx-hrlz"}));
    compress->add_option("--format", config.format, "Input format")
        ->check(CLI::IsMember({"fasta", "lines"}))
        ->capture_default_str();
    compress->add_option("--reference", config.reference,
                         "Reference sequence id, 1-based (rlz mode)");
    compress->add_option("--k", config.lsh.kmer_length, "k-mer length for fingerprints")
        ->capture_default_str();
    compress->add_option("--q", config.lsh.hash_count, "Hash functions per round")
        ->capture_default_str();
    compress->add_option("--prune-every", config.lsh.prune_period,
                         "Rounds between active-set prunes")
        ->capture_default_str();
    compress->add_option("--max-rounds", config.lsh.max_rounds, "Fingerprint round cap")
        ->capture_default_str();
    compress->add_option("--seed", config.lsh.seed, "RNG seed (falls back to HRLZ_SEED)");
    compress->add_flag("--root-cost", config.root_cost,
                       "Charge the raw-stored root's length when choosing the tree root");
    compress->add_option("--threads", config.threads, "Worker thread cap")
        ->capture_default_str();

    auto* decompress = app.add_subcommand("decompress", "Restore the original file from an archive");
    decompress->add_option("archive", archive_path, "Archive file ('-' for stdin)")->required();
    decompress->add_option("output", output_path, "Output file ('-' for stdout)")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Print phrase and tree statistics as CSV");
    stats_cmd->add_option("archive", archive_path, "Archive file ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << '\n';
        return 2;
    }

    try {
        if (compress->parsed()) {
            if (!compress->count("--seed")) config.lsh.seed = default_seed();
            if (config.mode == "rlz" && config.reference == 0) {
                std::cerr << "rlz mode requires --reference\n\n" << app.help() << '\n';
                return 2;
            }
            if (config.mode != "rlz" && compress->count("--reference")) {
                std::cerr << "--reference is only valid with --mode rlz\n\n" << app.help() << '\n';
                return 2;
            }
            if (config.threads == 0) config.threads = 1;
            return run_compress(config);
        }
        if (decompress->parsed()) return run_decompress(archive_path, output_path);
        return run_stats(archive_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
