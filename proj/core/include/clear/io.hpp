#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace clear::io {

// Little-endian primitives and LEB128 varints shared by the binary index,
// model and dense-index formats. Byte layout is fixed regardless of host
// endianness.

void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
void write_f32(std::ostream& out, float v);
void write_f64(std::ostream& out, double v);
void write_varint(std::ostream& out, std::uint64_t v);
void write_string(std::ostream& out, const std::string& s);

std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
float read_f32(std::istream& in);
double read_f64(std::istream& in);
std::uint64_t read_varint(std::istream& in);
std::string read_string(std::istream& in);

/// Reads the 4-byte magic at the stream head and checks it against
/// `expected`; throws with `what` context on mismatch or short read.
void expect_magic(std::istream& in, const char expected[4], const std::string& what);

}  // namespace clear::io
