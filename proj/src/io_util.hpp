#pragma once

// Little-endian byte packing shared by the SPWT and SPFT containers. The
// formats are defined in bytes, not in host representation, so everything
// goes through explicit shifts.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "seedpure/errors.hpp"

namespace seedpure::detail {

inline void write_u8(std::ostream& os, std::uint8_t v) {
    os.put(static_cast<char>(v));
}

inline void write_u16le(std::ostream& os, std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    os.write(b, 2);
}

inline void write_u32le(std::ostream& os, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b, 4);
}

inline void write_f32le(std::ostream& os, float v) {
    write_u32le(os, std::bit_cast<std::uint32_t>(v));
}

inline void read_exact(std::istream& is, char* dst, std::streamsize n, const char* what) {
    is.read(dst, n);
    if (is.gcount() != n) {
        throw FormatError(std::string("truncated file: expected ") + std::to_string(n) +
                          " bytes for " + what);
    }
}

inline std::uint8_t read_u8(std::istream& is, const char* what) {
    char b;
    read_exact(is, &b, 1, what);
    return static_cast<std::uint8_t>(b);
}

inline std::uint16_t read_u16le(std::istream& is, const char* what) {
    char b[2];
    read_exact(is, b, 2, what);
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[0]) |
                                      (static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[1]))
                                       << 8));
}

inline std::uint32_t read_u32le(std::istream& is, const char* what) {
    char b[4];
    read_exact(is, b, 4, what);
    return static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[0])) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[3])) << 24);
}

inline float read_f32le(std::istream& is, const char* what) {
    return std::bit_cast<float>(read_u32le(is, what));
}

}  // namespace seedpure::detail
