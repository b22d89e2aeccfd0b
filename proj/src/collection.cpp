#include "hrlz/collection.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hrlz {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read error: " + path);
    return std::move(buffer).str();
}

}  // namespace

Collection parse_fasta(std::string_view text) {
    Collection out;
    out.from_fasta = true;
    out.trailing_newline = !text.empty() && text.back() == '\n';

    bool in_record = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;

        if (!line.empty() && line.front() == '>') {
            out.names.emplace_back(line.substr(1));
            out.sequences.emplace_back();
            in_record = true;
        } else if (!in_record) {
            if (!line.empty()) throw std::runtime_error("malformed FASTA: data before first header");
        } else {
            out.sequences.back().append(line);
        }
    }
    if (out.sequences.empty()) throw std::runtime_error("empty collection");
    return out;
}

Collection parse_lines(std::string_view text) {
    Collection out;
    out.from_fasta = false;
    out.trailing_newline = !text.empty() && text.back() == '\n';

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            out.sequences.emplace_back(text.substr(pos));
            break;
        }
        out.sequences.emplace_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    if (out.sequences.empty()) throw std::runtime_error("empty collection");
    out.names.reserve(out.sequences.size());
    for (std::size_t i = 0; i < out.sequences.size(); ++i)
        out.names.push_back("seq" + std::to_string(i + 1));
    return out;
}

Collection load_fasta(const std::string& path) { return parse_fasta(read_file(path)); }

Collection load_lines(const std::string& path) { return parse_lines(read_file(path)); }

std::string to_fasta(const Collection& collection) {
    std::string out;
    std::uint64_t bytes = collection.total_length();
    for (const auto& n : collection.names) bytes += n.size() + 3;
    out.reserve(bytes);
    for (std::uint32_t i = 0; i < collection.size(); ++i) {
        out.push_back('>');
        out.append(collection.names[i]);
        out.push_back('\n');
        out.append(collection.sequences[i]);
        out.push_back('\n');
    }
    if (!collection.trailing_newline && !out.empty()) out.pop_back();
    return out;
}

std::string to_lines(const Collection& collection) {
    std::string out;
    out.reserve(collection.total_length() + collection.size());
    for (const auto& s : collection.sequences) {
        out.append(s);
        out.push_back('\n');
    }
    if (!collection.trailing_newline && !out.empty()) out.pop_back();
    return out;
}

}  // namespace hrlz
