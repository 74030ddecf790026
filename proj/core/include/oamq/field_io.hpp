#pragma once

#include <filesystem>
#include <iosfwd>

#include "oamq/mode_fields.hpp"

namespace oamq {

/// Binary field dump, little-endian throughout:
///   offset 0   4 bytes  magic "LGF1"
///   offset 4   uint32   reserved, 0
///   offset 8   uint64   samples_per_side
///   offset 16  float64  half_extent (m)
///   offset 24  N*N pairs of float64 (re, im), row-major, y outer
inline constexpr std::size_t kFieldDumpHeaderBytes = 24;

void write_field_dump(std::ostream& out, const ComplexField& field);
void write_field_dump(const std::filesystem::path& path, const ComplexField& field);

/// Throws FormatError on bad magic, truncated data, or an invalid grid.
ComplexField read_field_dump(std::istream& in);
ComplexField read_field_dump(const std::filesystem::path& path);

}  // namespace oamq
