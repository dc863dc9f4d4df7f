#pragma once

#include <string>
#include <utility>
#include <vector>

#include "leafquant/colorspace.hpp"
#include "leafquant/raster.hpp"

namespace leafquant {

/// Every threshold the pipeline consumes. Defaults bracket vegetation green
/// and mid-luma lesions; real surveys tune them per camera and crop.
struct SegmentationConfig {
  double hue_lo = 60.0;            // degrees, inclusive
  double hue_hi = 180.0;           // degrees, exclusive
  double sat_min = 0.2;
  double val_min = 0.1;
  int gray_lo = 60;                // luma, inclusive
  int gray_hi = 160;               // luma, inclusive
  int plant_dilation_radius = 25;  // Chebyshev radius of the plant region
  double quality_min = 100.0;

  friend bool operator==(const SegmentationConfig&, const SegmentationConfig&) = default;

  void validate() const {
    if (!(0.0 <= hue_lo && hue_lo < hue_hi && hue_hi < 360.0))
      throw ConfigError("segmentation.hue_lo/hue_hi: require 0 <= hue_lo < hue_hi < 360");
    if (!(0.0 <= sat_min && sat_min <= 1.0))
      throw ConfigError("segmentation.sat_min: require 0 <= sat_min <= 1");
    if (!(0.0 <= val_min && val_min <= 1.0))
      throw ConfigError("segmentation.val_min: require 0 <= val_min <= 1");
    if (!(0 <= gray_lo && gray_lo <= gray_hi && gray_hi <= 255))
      throw ConfigError("segmentation.gray_lo/gray_hi: require 0 <= gray_lo <= gray_hi <= 255");
    if (plant_dilation_radius < 0)
      throw ConfigError("segmentation.plant_dilation_radius: must be >= 0");
    if (!(quality_min >= 0.0))
      throw ConfigError("segmentation.quality_min: must be >= 0");
  }

  bool in_green_band(const Hsv& p) const {
    return hue_lo <= p.h && p.h < hue_hi && p.s >= sat_min && p.v >= val_min;
  }

  bool in_gray_band(int luma) const { return gray_lo <= luma && luma <= gray_hi; }
};

/// Morphological dilation by a square structuring element of the given
/// Chebyshev radius. Separable: a sliding-window OR over rows, then columns,
/// each pass answered from prefix sums.
inline BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius < 0) throw DimensionMismatch("dilation radius must be >= 0");
  if (radius == 0) return mask;

  const int w = mask.width();
  const int h = mask.height();
  BinaryMask rows(w, h);
  std::vector<std::int32_t> prefix(static_cast<std::size_t>(std::max(w, h)) + 1);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + (mask.at(x, y) ? 1 : 0);
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(0, x - radius);
      const int hi = std::min(w, x + radius + 1);
      rows.set(x, y, prefix[hi] - prefix[lo] > 0);
    }
  }

  BinaryMask out(w, h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) prefix[y + 1] = prefix[y] + (rows.at(x, y) ? 1 : 0);
    for (int y = 0; y < h; ++y) {
      const int lo = std::max(0, y - radius);
      const int hi = std::min(h, y + radius + 1);
      out.set(x, y, prefix[hi] - prefix[lo] > 0);
    }
  }
  return out;
}

/// Soil removal: true where the pixel sits inside the configured green band.
inline BinaryMask green_mask(const HsvImage& image, const SegmentationConfig& config) {
  BinaryMask out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      out.set(x, y, config.in_green_band(image.at(x, y)));
  return out;
}

/// Lesion candidates: in the gray band, not healthy green, and inside the
/// plant region (the green mask dilated by plant_dilation_radius). Radius 0
/// leaves the plant region equal to the green mask, so the result is empty;
/// pair the gray band with radius >= 1 for a usable defect mask.
inline BinaryMask defect_mask(const GrayImage& gray, const BinaryMask& green,
                              const SegmentationConfig& config) {
  require_same_shape(gray.width(), gray.height(), green.width(), green.height());
  const BinaryMask plant = dilate(green, config.plant_dilation_radius);
  BinaryMask out(gray.width(), gray.height());
  for (int y = 0; y < gray.height(); ++y)
    for (int x = 0; x < gray.width(); ++x)
      out.set(x, y, config.in_gray_band(gray.at(x, y)) && !green.at(x, y) && plant.at(x, y));
  return out;
}

/// Total leaf extent: healthy green tissue plus diseased tissue.
inline BinaryMask leaf_mask(const BinaryMask& green, const BinaryMask& defect) {
  return mask_or(green, defect);
}

/// Sharpness score: population variance of the 4-neighbour discrete Laplacian
/// (center 4, neighbours -1) over all interior pixels. Higher is sharper.
inline double quality_score(const GrayImage& gray) {
  const int w = gray.width();
  const int h = gray.height();
  if (w < 3 || h < 3)
    throw ImageTooSmall("quality_score requires width >= 3 and height >= 3");

  const std::int64_t n = static_cast<std::int64_t>(w - 2) * (h - 2);
  double sum = 0.0;
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x)
      sum += 4 * gray.at(x, y) - gray.at(x - 1, y) - gray.at(x + 1, y) -
             gray.at(x, y - 1) - gray.at(x, y + 1);
  const double mean = sum / static_cast<double>(n);

  double ss = 0.0;
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x) {
      const double d = 4 * gray.at(x, y) - gray.at(x - 1, y) - gray.at(x + 1, y) -
                       gray.at(x, y - 1) - gray.at(x, y + 1) - mean;
      ss += d * d;
    }
  return ss / static_cast<double>(n);
}

/// Quality screen: ids whose score reaches quality_min, input order preserved.
inline std::vector<std::string> select_images(
    const std::vector<std::pair<std::string, double>>& scored,
    const SegmentationConfig& config) {
  std::vector<std::string> out;
  for (const auto& [id, score] : scored)
    if (score >= config.quality_min) out.push_back(id);
  return out;
}

}  // namespace leafquant
