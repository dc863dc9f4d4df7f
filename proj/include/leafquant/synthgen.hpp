#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "leafquant/colorspace.hpp"
#include "leafquant/raster.hpp"
#include "leafquant/segmentation.hpp"

namespace leafquant {

struct Disk {
  int cx = 0;
  int cy = 0;
  int r = 0;

  bool contains(int x, int y) const {
    const std::int64_t dx = x - cx;
    const std::int64_t dy = y - cy;
    return dx * dx + dy * dy <= static_cast<std::int64_t>(r) * r;
  }

  friend bool operator==(const Disk&, const Disk&) = default;
};

/// Flat-colour field scene: soil canvas, leaf disks, lesion disks on leaves.
/// The three colours must separate decisively under the segmentation bands or
/// generate_scene refuses the spec (see validate_spec).
struct SynthSpec {
  int width = 0;
  int height = 0;
  Rgb soil_rgb;
  Rgb leaf_rgb;
  Rgb lesion_rgb;
  std::vector<Disk> leaf_blobs;
  std::vector<Disk> lesion_spots;
  std::uint32_t seed = 0;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

/// Exact per-pixel labels of a generated scene.
struct GroundTruth {
  std::int64_t green_px = 0;
  std::int64_t defect_px = 0;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

namespace detail {

inline std::string rgb_str(Rgb c) {
  return "(" + std::to_string(c.r) + "," + std::to_string(c.g) + "," + std::to_string(c.b) + ")";
}

}  // namespace detail

/// Rejects any spec whose scene would not be exactly recoverable by the
/// pipeline under the given thresholds: leaf strictly inside the green band
/// and outside the gray band, lesion the reverse, soil outside both, and
/// every lesion disk contained (pixel for pixel) in the leaf blobs.
inline void validate_spec(const SynthSpec& spec, const SegmentationConfig& config) {
  if (spec.width < 1 || spec.height < 1)
    throw SpecInvalid("canvas must be at least 1x1");
  for (const Disk& d : spec.leaf_blobs)
    if (d.r < 0) throw SpecInvalid("leaf blob radius must be >= 0");
  for (const Disk& d : spec.lesion_spots)
    if (d.r < 0) throw SpecInvalid("lesion spot radius must be >= 0");

  const Hsv leaf = rgb_pixel_to_hsv(spec.leaf_rgb);
  if (!(config.hue_lo < leaf.h && leaf.h < config.hue_hi && leaf.s > config.sat_min &&
        leaf.v > config.val_min))
    throw SpecInvalid("leaf_rgb " + detail::rgb_str(spec.leaf_rgb) +
                      " is not strictly inside the green band");
  const int leaf_luma = rgb_pixel_to_gray(spec.leaf_rgb);
  if (config.gray_lo <= leaf_luma && leaf_luma <= config.gray_hi)
    throw SpecInvalid("leaf_rgb luma " + std::to_string(leaf_luma) +
                      " falls inside the gray band");

  const int lesion_luma = rgb_pixel_to_gray(spec.lesion_rgb);
  if (!(config.gray_lo < lesion_luma && lesion_luma < config.gray_hi))
    throw SpecInvalid("lesion_rgb luma " + std::to_string(lesion_luma) +
                      " is not strictly inside the gray band");
  if (config.in_green_band(rgb_pixel_to_hsv(spec.lesion_rgb)))
    throw SpecInvalid("lesion_rgb " + detail::rgb_str(spec.lesion_rgb) +
                      " falls inside the green band");

  if (config.in_green_band(rgb_pixel_to_hsv(spec.soil_rgb)))
    throw SpecInvalid("soil_rgb " + detail::rgb_str(spec.soil_rgb) +
                      " falls inside the green band");
  const int soil_luma = rgb_pixel_to_gray(spec.soil_rgb);
  if (config.in_gray_band(soil_luma))
    throw SpecInvalid("soil_rgb luma " + std::to_string(soil_luma) +
                      " falls inside the gray band");

  for (const Disk& spot : spec.lesion_spots) {
    const int x0 = std::max(0, spot.cx - spot.r);
    const int x1 = std::min(spec.width - 1, spot.cx + spot.r);
    const int y0 = std::max(0, spot.cy - spot.r);
    const int y1 = std::min(spec.height - 1, spot.cy + spot.r);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        if (!spot.contains(x, y)) continue;
        bool on_leaf = false;
        for (const Disk& blob : spec.leaf_blobs)
          if (blob.contains(x, y)) {
            on_leaf = true;
            break;
          }
        if (!on_leaf)
          throw SpecInvalid("lesion spot at (" + std::to_string(spot.cx) + "," +
                            std::to_string(spot.cy) + ") r=" + std::to_string(spot.r) +
                            " leaves the leaf blobs at pixel (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");
      }
  }
}

/// Renders the scene and counts the final labels. A pixel painted by both a
/// leaf blob and a lesion spot counts as defect only.
inline std::pair<RgbImage, GroundTruth> generate_scene(const SynthSpec& spec) {
  validate_spec(spec, SegmentationConfig{});

  enum : std::uint8_t { kSoil = 0, kLeaf = 1, kLesion = 2 };
  std::vector<std::uint8_t> label(detail::pixel_count(spec.width, spec.height), kSoil);
  const auto paint = [&](const Disk& d, std::uint8_t to, bool leaf_only) {
    const int x0 = std::max(0, d.cx - d.r);
    const int x1 = std::min(spec.width - 1, d.cx + d.r);
    const int y0 = std::max(0, d.cy - d.r);
    const int y1 = std::min(spec.height - 1, d.cy + d.r);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        auto& cell = label[static_cast<std::size_t>(y) * spec.width + x];
        if (d.contains(x, y) && (!leaf_only || cell == kLeaf)) cell = to;
      }
  };
  for (const Disk& blob : spec.leaf_blobs) paint(blob, kLeaf, false);
  for (const Disk& spot : spec.lesion_spots) paint(spot, kLesion, true);

  GroundTruth truth;
  std::vector<Rgb> pixels(label.size());
  for (std::size_t i = 0; i < label.size(); ++i) {
    switch (label[i]) {
      case kLeaf:
        pixels[i] = spec.leaf_rgb;
        ++truth.green_px;
        break;
      case kLesion:
        pixels[i] = spec.lesion_rgb;
        ++truth.defect_px;
        break;
      default:
        pixels[i] = spec.soil_rgb;
    }
  }
  return {RgbImage(spec.width, spec.height, std::move(pixels)), truth};
}

namespace detail {

/// mt19937 with modulo draws: the engine sequence is pinned by the standard,
/// unlike std::uniform_int_distribution, so specs are identical across
/// platforms. The modulo bias is irrelevant for scene layout.
class SceneRng {
 public:
  explicit SceneRng(std::uint32_t seed) : eng_(seed) {}

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint32_t>(hi - lo + 1));
  }

 private:
  std::mt19937 eng_;
};

}  // namespace detail

/// Seeded 640x480 scene: 3-6 leaf blobs, each carrying 0-2 lesions. Placement
/// keeps every lesion at least 4 px clear of its blob edge and of every other
/// lesion, so each lesion pixel has a green pixel within Chebyshev distance
/// (lesion radius + 3) -- well inside the default plant dilation radius.
inline SynthSpec default_spec(std::uint32_t seed) {
  SynthSpec spec;
  spec.width = 640;
  spec.height = 480;
  spec.soil_rgb = {200, 160, 120};   // sandy soil: hue 30, luma 167
  spec.leaf_rgb = {15, 70, 20};      // dark leaf green: hue 125.5, luma 48
  spec.lesion_rgb = {120, 110, 40};  // ochre lesion: hue 52.5, luma 105
  spec.seed = seed;

  detail::SceneRng rng(seed);
  const int n_blobs = rng.range(3, 6);
  for (int i = 0; i < n_blobs; ++i) {
    Disk blob;
    blob.r = rng.range(25, 55);
    blob.cx = rng.range(blob.r, spec.width - 1 - blob.r);
    blob.cy = rng.range(blob.r, spec.height - 1 - blob.r);
    spec.leaf_blobs.push_back(blob);

    const int n_lesions = rng.range(0, 2);
    for (int j = 0; j < n_lesions; ++j) {
      const int r = rng.range(3, 10);
      const int margin = blob.r - r - 4;
      for (int attempt = 0; attempt < 32; ++attempt) {
        const int dx = rng.range(-margin, margin);
        const int dy = rng.range(-margin, margin);
        if (dx * dx + dy * dy > margin * margin) continue;
        const Disk spot{blob.cx + dx, blob.cy + dy, r};
        bool clear = true;
        for (const Disk& other : spec.lesion_spots) {
          const std::int64_t ddx = spot.cx - other.cx;
          const std::int64_t ddy = spot.cy - other.cy;
          const std::int64_t need = spot.r + other.r + 4;
          if (ddx * ddx + ddy * ddy < need * need) {
            clear = false;
            break;
          }
        }
        if (clear) {
          spec.lesion_spots.push_back(spot);
          break;
        }
      }
    }
  }
  return spec;
}

}  // namespace leafquant
