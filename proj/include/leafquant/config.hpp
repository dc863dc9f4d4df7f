#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "leafquant/calibration.hpp"
#include "leafquant/errors.hpp"
#include "leafquant/segmentation.hpp"

namespace leafquant {

/// Everything a batch run needs. Fields missing from the JSON keep the
/// module defaults; unknown fields are rejected so typos cannot silently
/// fall back to a default threshold.
struct RunConfig {
  SegmentationConfig segmentation;
  Calibration calibration;
};

namespace detail {

inline double config_double(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

inline int config_int(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

inline void parse_segmentation(const nlohmann::json& obj, SegmentationConfig& seg) {
  if (!obj.is_object()) throw ConfigError("segmentation: expected a JSON object");
  for (const auto& [key, val] : obj.items()) {
    const std::string where = "segmentation." + key;
    if (key == "hue_lo") seg.hue_lo = config_double(val, where);
    else if (key == "hue_hi") seg.hue_hi = config_double(val, where);
    else if (key == "sat_min") seg.sat_min = config_double(val, where);
    else if (key == "val_min") seg.val_min = config_double(val, where);
    else if (key == "gray_lo") seg.gray_lo = config_int(val, where);
    else if (key == "gray_hi") seg.gray_hi = config_int(val, where);
    else if (key == "plant_dilation_radius") seg.plant_dilation_radius = config_int(val, where);
    else if (key == "quality_min") seg.quality_min = config_double(val, where);
    else throw ConfigError("segmentation: unknown field '" + key + "'");
  }
}

inline void parse_calibration(const nlohmann::json& obj, Calibration& cal) {
  if (!obj.is_object()) throw ConfigError("calibration: expected a JSON object");
  for (const auto& [key, val] : obj.items()) {
    const std::string where = "calibration." + key;
    if (key == "altitude_mm") cal.altitude_mm = config_double(val, where);
    else if (key == "focal_length_mm") cal.focal_length_mm = config_double(val, where);
    else if (key == "sensor_width_mm") cal.sensor_width_mm = config_double(val, where);
    else if (key == "sensor_height_mm") cal.sensor_height_mm = config_double(val, where);
    else if (key == "image_width_px") cal.image_width_px = config_int(val, where);
    else if (key == "image_height_px") cal.image_height_px = config_int(val, where);
    else throw ConfigError("calibration: unknown field '" + key + "'");
  }
}

}  // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, val] : doc.items()) {
    if (key == "segmentation") detail::parse_segmentation(val, cfg.segmentation);
    else if (key == "calibration") detail::parse_calibration(val, cfg.calibration);
    else throw ConfigError("config: unknown section '" + key + "'");
  }
  cfg.segmentation.validate();
  cfg.calibration.validate();
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return parse_run_config(doc);
}

}  // namespace leafquant
