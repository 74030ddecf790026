#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "oamq/mode_fields.hpp"

namespace oamq {

struct ImageSpec {
  /// 0 means "one pixel per grid sample".
  int width = 0;
  int height = 0;
  /// Brightness is (|psi|^2 / max |psi|^2)^(1/gamma_display).
  double gamma_display = 1.0;
  bool scale_bar = false;
  /// Physical bar length (m); usually one magnetic waist.
  double scale_bar_length = 0.0;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

/// Six-sector HSV to RGB, hue in [0, 1) (values outside wrap), s and v in
/// [0, 1]. Channels are rounded to the nearest 8-bit level.
Rgb hsv_to_rgb(double hue, double saturation, double value);

/// Phase as hue ((arg + pi) / 2pi), probability as brightness. Row 0 of the
/// image is the largest y. A zero field renders black.
std::vector<Rgb> render_pixels(const ComplexField& field, const ImageSpec& spec);

/// Binary PPM (P6, maxval 255) of render_pixels.
std::vector<std::uint8_t> render_field(const ComplexField& field, const ImageSpec& spec);

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace oamq
