#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leafquant/calibration.hpp"
#include "leafquant/colorspace.hpp"
#include "leafquant/raster.hpp"
#include "leafquant/segmentation.hpp"

namespace leafquant {

struct ImageReport {
  std::string image_id;
  double quality = 0.0;
  std::int64_t green_px = 0;
  std::int64_t defect_px = 0;
  std::int64_t leaf_px = 0;
  double leaf_area_mm2 = 0.0;
  double defect_area_mm2 = 0.0;
  double percent_defect = 0.0;

  friend bool operator==(const ImageReport&, const ImageReport&) = default;
};

struct RegionReport {
  std::string region;
  std::int64_t n_images = 0;
  double total_leaf_area_mm2 = 0.0;
  double total_defect_area_mm2 = 0.0;
  double percent_defect = 0.0;

  friend bool operator==(const RegionReport&, const RegionReport&) = default;
};

/// One row of images.csv: an image report tagged with its field region.
struct ImageRecord {
  std::string region;
  ImageReport report;

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

/// Full pipeline for one image: HSV green mask, grayscale quality and defect
/// mask, leaf union, pixel-to-area conversion, defect percentage. The
/// percentage is computed from the pixel counts, so it is bit-for-bit
/// independent of the calibration (area_per_pixel cancels in the ratio).
inline ImageReport quantify_image(const RgbImage& image, std::string image_id,
                                  const SegmentationConfig& seg, const Calibration& cal) {
  const HsvImage hsv = rgb_to_hsv(image);
  const BinaryMask green = green_mask(hsv, seg);
  const GrayImage gray = rgb_to_gray(image);
  const double quality = quality_score(gray);  // throws ImageTooSmall below 3x3
  const BinaryMask defect = defect_mask(gray, green, seg);
  const BinaryMask leaf = leaf_mask(green, defect);

  ImageReport rep;
  rep.image_id = std::move(image_id);
  rep.quality = quality;
  rep.green_px = mask_count(green);
  rep.defect_px = mask_count(defect);
  rep.leaf_px = mask_count(leaf);
  rep.leaf_area_mm2 = pixels_to_area(rep.leaf_px, cal);
  rep.defect_area_mm2 = pixels_to_area(rep.defect_px, cal);
  rep.percent_defect =
      rep.leaf_px > 0 ? (100.0 * static_cast<double>(rep.defect_px)) / static_cast<double>(rep.leaf_px)
                      : 0.0;
  return rep;
}

/// Region totals are sums of member areas; the region percentage is the ratio
/// of the summed areas (area-weighted), not the mean of member percentages.
inline RegionReport aggregate_region(std::string region, const std::vector<ImageReport>& reports) {
  RegionReport out;
  out.region = std::move(region);
  out.n_images = static_cast<std::int64_t>(reports.size());
  for (const ImageReport& r : reports) {
    out.total_leaf_area_mm2 += r.leaf_area_mm2;
    out.total_defect_area_mm2 += r.defect_area_mm2;
  }
  out.percent_defect =
      out.total_leaf_area_mm2 > 0.0 ? (100.0 * out.total_defect_area_mm2) / out.total_leaf_area_mm2
                                    : 0.0;
  return out;
}

namespace detail {

/// Fixed two decimals, round half away from zero.
inline std::string fixed2(double v) {
  const long long cents = std::llround(v * 100.0);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", cents < 0 ? "-" : "",
                std::llabs(cents) / 100, std::llabs(cents) % 100);
  return buf;
}

/// Same rounding as fixed2 but kept numeric, for the JSON mirror.
inline double round2(double v) { return static_cast<double>(std::llround(v * 100.0)) / 100.0; }

/// Writes via a temp file and renames, so failures never leave partial output.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into place: " + path.string());
  }
}

}  // namespace detail

/// Writes images.csv, regions.csv and report.json into out_dir. Rows are
/// sorted (images by region then id, regions by name) so output bytes do not
/// depend on the order results were produced in. Returns the three paths.
inline std::vector<std::filesystem::path> write_reports(std::vector<RegionReport> regions,
                                                        std::vector<ImageRecord> images,
                                                        const std::filesystem::path& out_dir,
                                                        std::int64_t skipped = 0) {
  std::sort(images.begin(), images.end(), [](const ImageRecord& a, const ImageRecord& b) {
    return std::tie(a.region, a.report.image_id) < std::tie(b.region, b.report.image_id);
  });
  std::sort(regions.begin(), regions.end(),
            [](const RegionReport& a, const RegionReport& b) { return a.region < b.region; });

  std::string csv =
      "image_id,region,quality,green_px,defect_px,leaf_px,leaf_area_mm2,defect_area_mm2,percent_defect\n";
  for (const ImageRecord& rec : images) {
    const ImageReport& r = rec.report;
    csv += r.image_id + ',' + rec.region + ',' + detail::fixed2(r.quality) + ',' +
           std::to_string(r.green_px) + ',' + std::to_string(r.defect_px) + ',' +
           std::to_string(r.leaf_px) + ',' + detail::fixed2(r.leaf_area_mm2) + ',' +
           detail::fixed2(r.defect_area_mm2) + ',' + detail::fixed2(r.percent_defect) + '\n';
  }
  const std::filesystem::path images_csv = out_dir / "images.csv";
  detail::write_file_atomic(images_csv, csv);

  csv = "region,n_images,total_leaf_area_mm2,total_defect_area_mm2,percent_defect\n";
  for (const RegionReport& r : regions) {
    csv += r.region + ',' + std::to_string(r.n_images) + ',' +
           detail::fixed2(r.total_leaf_area_mm2) + ',' + detail::fixed2(r.total_defect_area_mm2) +
           ',' + detail::fixed2(r.percent_defect) + '\n';
  }
  const std::filesystem::path regions_csv = out_dir / "regions.csv";
  detail::write_file_atomic(regions_csv, csv);

  nlohmann::json doc;
  doc["images"] = nlohmann::json::array();
  for (const ImageRecord& rec : images) {
    const ImageReport& r = rec.report;
    doc["images"].push_back({{"image_id", r.image_id},
                             {"region", rec.region},
                             {"quality", detail::round2(r.quality)},
                             {"green_px", r.green_px},
                             {"defect_px", r.defect_px},
                             {"leaf_px", r.leaf_px},
                             {"leaf_area_mm2", detail::round2(r.leaf_area_mm2)},
                             {"defect_area_mm2", detail::round2(r.defect_area_mm2)},
                             {"percent_defect", detail::round2(r.percent_defect)}});
  }
  doc["regions"] = nlohmann::json::array();
  for (const RegionReport& r : regions) {
    doc["regions"].push_back({{"region", r.region},
                              {"n_images", r.n_images},
                              {"total_leaf_area_mm2", detail::round2(r.total_leaf_area_mm2)},
                              {"total_defect_area_mm2", detail::round2(r.total_defect_area_mm2)},
                              {"percent_defect", detail::round2(r.percent_defect)}});
  }
  doc["skipped"] = skipped;
  const std::filesystem::path report_json = out_dir / "report.json";
  detail::write_file_atomic(report_json, doc.dump(2) + "\n");

  return {images_csv, regions_csv, report_json};
}

}  // namespace leafquant
