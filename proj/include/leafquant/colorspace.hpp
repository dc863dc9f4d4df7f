#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "leafquant/raster.hpp"

namespace leafquant {

/// h in degrees [0, 360); s and v in [0, 1]. Achromatic pixels carry h = 0, s = 0.
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;

  friend bool operator==(const Hsv&, const Hsv&) = default;
};

class HsvImage {
 public:
  HsvImage(int width, int height, std::vector<Hsv> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    detail::check_extent(width, height);
    if (pixels_.size() != detail::pixel_count(width, height))
      throw DimensionMismatch("pixel buffer size does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  const Hsv& at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const Hsv> pixels() const { return pixels_; }

 private:
  int width_;
  int height_;
  std::vector<Hsv> pixels_;
};

/// Hexcone conversion of one pixel. Channel differences stay in integer
/// arithmetic so that exact hues (primaries, secondaries) come out exact.
inline Hsv rgb_pixel_to_hsv(Rgb p) {
  const int maxc = std::max({p.r, p.g, p.b});
  const int minc = std::min({p.r, p.g, p.b});
  const int delta = maxc - minc;

  Hsv out;
  out.v = maxc / 255.0;
  out.s = maxc == 0 ? 0.0 : static_cast<double>(delta) / maxc;
  if (delta == 0) return out;  // h stays 0 for achromatic pixels

  double sextant;
  if (p.r == maxc) {
    sextant = std::fmod((p.g - p.b) / static_cast<double>(delta), 6.0);
    if (sextant < 0) sextant += 6.0;
  } else if (p.g == maxc) {
    sextant = (p.b - p.r) / static_cast<double>(delta) + 2.0;
  } else {
    sextant = (p.r - p.g) / static_cast<double>(delta) + 4.0;
  }
  out.h = 60.0 * sextant;
  return out;
}

inline HsvImage rgb_to_hsv(const RgbImage& image) {
  std::vector<Hsv> px;
  px.reserve(image.pixels().size());
  for (Rgb p : image.pixels()) px.push_back(rgb_pixel_to_hsv(p));
  return HsvImage(image.width(), image.height(), std::move(px));
}

/// BT.601 luma, round half away from zero. The weights (0.299, 0.587, 0.114)
/// sum to exactly 1000/1000, so the sum below never exceeds 255 * 1000.
inline std::uint8_t rgb_pixel_to_gray(Rgb p) {
  const std::int32_t scaled = 299 * p.r + 587 * p.g + 114 * p.b;
  return static_cast<std::uint8_t>((scaled + 500) / 1000);
}

inline GrayImage rgb_to_gray(const RgbImage& image) {
  std::vector<std::uint8_t> luma;
  luma.reserve(image.pixels().size());
  for (Rgb p : image.pixels()) luma.push_back(rgb_pixel_to_gray(p));
  return GrayImage(image.width(), image.height(), std::move(luma));
}

}  // namespace leafquant
