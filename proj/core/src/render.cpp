#include "oamq/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"

namespace oamq {
namespace {

constexpr int kScaleBarThickness = 2;
constexpr int kScaleBarMargin = 8;

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

Rgb hsv_to_rgb(double hue, double saturation, double value) {
  hue -= std::floor(hue);
  const double h6 = hue * 6.0;
  const int sector = std::min(static_cast<int>(h6), 5);
  const double f = h6 - sector;
  const double p = value * (1.0 - saturation);
  const double q = value * (1.0 - saturation * f);
  const double t = value * (1.0 - saturation * (1.0 - f));
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = value; g = t; b = p; break;
    case 1: r = q; g = value; b = p; break;
    case 2: r = p; g = value; b = t; break;
    case 3: r = p; g = q; b = value; break;
    case 4: r = t; g = p; b = value; break;
    default: r = value; g = p; b = q; break;
  }
  return {to_byte(r), to_byte(g), to_byte(b)};
}

std::vector<Rgb> render_pixels(const ComplexField& field, const ImageSpec& spec) {
  const auto& grid = field.grid();
  const int n = grid.samples_per_side();
  const int width = spec.width > 0 ? spec.width : n;
  const int height = spec.height > 0 ? spec.height : n;
  if (!(spec.gamma_display > 0)) throw DomainError("gamma_display must be positive");

  double peak = 0.0;
  for (const auto& a : field.amplitudes()) peak = std::max(peak, std::norm(a));

  std::vector<Rgb> pixels(static_cast<std::size_t>(width) * height);
  if (peak > 0.0) {
    const double exponent = 1.0 / spec.gamma_display;
    for (int py = 0; py < height; ++py) {
      const int iy = n - 1 - static_cast<int>(static_cast<long long>(py) * n / height);
      for (int px = 0; px < width; ++px) {
        const int ix = static_cast<int>(static_cast<long long>(px) * n / width);
        const Complex a = field.at(ix, iy);
        const double brightness = std::pow(std::norm(a) / peak, exponent);
        const double hue = (std::arg(a) + kPi) / (2.0 * kPi);
        pixels[static_cast<std::size_t>(py) * width + px] = hsv_to_rgb(hue, 1.0, brightness);
      }
    }
  }

  if (spec.scale_bar && spec.scale_bar_length > 0) {
    const double metres_per_pixel = 2.0 * grid.half_extent() / width;
    const int length = static_cast<int>(std::lround(spec.scale_bar_length / metres_per_pixel));
    const int x_end = std::min(width, kScaleBarMargin + length);
    const int y_end = std::max(0, height - kScaleBarMargin);
    const int y_begin = std::max(0, y_end - kScaleBarThickness);
    for (int py = y_begin; py < y_end; ++py) {
      for (int px = kScaleBarMargin; px < x_end; ++px) {
        pixels[static_cast<std::size_t>(py) * width + px] = {255, 255, 255};
      }
    }
  }
  return pixels;
}

std::vector<std::uint8_t> render_field(const ComplexField& field, const ImageSpec& spec) {
  const int n = field.grid().samples_per_side();
  const int width = spec.width > 0 ? spec.width : n;
  const int height = spec.height > 0 ? spec.height : n;
  const auto pixels = render_pixels(field, spec);

  const std::string header =
      "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.reserve(bytes.size() + pixels.size() * 3);
  for (const auto& p : pixels) {
    bytes.push_back(p.r);
    bytes.push_back(p.g);
    bytes.push_back(p.b);
  }
  return bytes;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace oamq
