#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hrlz {

// Unsigned LEB128: 7 payload bits per byte, MSB set on continuation bytes.

inline void put_varint(std::string& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<char>((value & 0x7f) | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<char>(value));
}

// Reads one varint at `pos` and advances it past the encoding.
inline std::uint64_t get_varint(std::string_view bytes, std::size_t& pos) {
    std::uint64_t value = 0;
    unsigned shift = 0;
    for (;;) {
        if (pos >= bytes.size())
            throw std::runtime_error("corrupt archive file: truncated varint");
        auto byte = static_cast<unsigned char>(bytes[pos++]);
        if (shift == 63 && byte > 1)
            throw std::runtime_error("corrupt archive file: varint overflow");
        value |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0)
            return value;
        shift += 7;
        if (shift > 63)
            throw std::runtime_error("corrupt archive file: varint overflow");
    }
}

}  // namespace hrlz
