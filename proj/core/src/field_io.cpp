#include "oamq/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "oamq/errors.hpp"

namespace oamq {
namespace {

constexpr std::array<char, 4> kMagic{'L', 'G', 'F', '1'};
constexpr std::uint64_t kMaxSamplesPerSide = 1u << 15;

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xffu);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw FormatError("field dump truncated");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace

void write_field_dump(std::ostream& out, const ComplexField& field) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, 0);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(field.grid().samples_per_side()));
  put_f64(out, field.grid().half_extent());
  for (const auto& a : field.amplitudes()) {
    put_f64(out, a.real());
    put_f64(out, a.imag());
  }
  if (!out) throw FormatError("failed writing field dump");
}

void write_field_dump(const std::filesystem::path& path, const ComplexField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_field_dump(out, field);
}

ComplexField read_field_dump(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("not a field dump (bad magic)");
  get_le<std::uint32_t>(in);
  const auto samples = get_le<std::uint64_t>(in);
  const double half_extent = get_f64(in);
  if (samples == 0 || samples > kMaxSamplesPerSide) {
    throw FormatError("field dump has implausible samples_per_side");
  }
  if (!(half_extent > 0)) throw FormatError("field dump has non-positive half-extent");

  const TransverseGrid grid(static_cast<int>(samples), half_extent);
  std::vector<Complex> values(grid.size());
  for (auto& v : values) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  return ComplexField(grid, std::move(values));
}

ComplexField read_field_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open field dump " + path.string());
  return read_field_dump(in);
}

}  // namespace oamq
