#include "clear/io.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace clear::io {

namespace {

void put_bytes(std::ostream& out, const unsigned char* p, std::size_t n) {
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!out) throw std::runtime_error("write failed");
}

void get_bytes(std::istream& in, unsigned char* p, std::size_t n) {
    in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        throw std::runtime_error("unexpected end of file");
    }
}

}  // namespace

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(out, b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(out, b, 8);
}

void write_f32(std::ostream& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    write_u32(out, bits);
}

void write_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    write_u64(out, bits);
}

void write_varint(std::ostream& out, std::uint64_t v) {
    unsigned char buf[10];
    std::size_t n = 0;
    while (v >= 0x80) {
        buf[n++] = static_cast<unsigned char>(v) | 0x80;
        v >>= 7;
    }
    buf[n++] = static_cast<unsigned char>(v);
    put_bytes(out, buf, n);
}

void write_string(std::ostream& out, const std::string& s) {
    write_varint(out, s.size());
    if (!s.empty()) {
        put_bytes(out, reinterpret_cast<const unsigned char*>(s.data()), s.size());
    }
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    get_bytes(in, b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char b[8];
    get_bytes(in, b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

float read_f32(std::istream& in) {
    std::uint32_t bits = read_u32(in);
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

double read_f64(std::istream& in) {
    std::uint64_t bits = read_u64(in);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

std::uint64_t read_varint(std::istream& in) {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        unsigned char b;
        get_bytes(in, &b, 1);
        if (shift == 63 && (b & 0x7E) != 0) throw std::runtime_error("varint overflow");
        v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if ((b & 0x80) == 0) return v;
        shift += 7;
        if (shift > 63) throw std::runtime_error("varint overflow");
    }
}

std::string read_string(std::istream& in) {
    std::uint64_t n = read_varint(in);
    std::string s(n, '\0');
    if (n > 0) get_bytes(in, reinterpret_cast<unsigned char*>(s.data()), n);
    return s;
}

void expect_magic(std::istream& in, const char expected[4], const std::string& what) {
    char got[4];
    in.read(got, 4);
    if (in.gcount() != 4 || std::memcmp(got, expected, 4) != 0) {
        throw std::runtime_error(what + ": bad magic, not a " +
                                 std::string(expected, 4) + " file");
    }
}

}  // namespace clear::io
