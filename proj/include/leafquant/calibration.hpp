#pragma once

#include <cstdint>

#include "leafquant/errors.hpp"

namespace leafquant {

/// Nadir pinhole capture geometry. Defaults carry the survey altitude of 5 m;
/// the camera intrinsics are placeholders for a small UAV camera and must be
/// overridden per survey.
struct Calibration {
  double altitude_mm = 5000.0;
  double focal_length_mm = 5.0;
  double sensor_width_mm = 6.17;
  double sensor_height_mm = 4.55;
  int image_width_px = 4000;
  int image_height_px = 3000;

  friend bool operator==(const Calibration&, const Calibration&) = default;

  void validate() const {
    if (!(altitude_mm > 0)) throw ConfigError("calibration.altitude_mm: must be > 0");
    if (!(focal_length_mm > 0)) throw ConfigError("calibration.focal_length_mm: must be > 0");
    if (!(sensor_width_mm > 0)) throw ConfigError("calibration.sensor_width_mm: must be > 0");
    if (!(sensor_height_mm > 0)) throw ConfigError("calibration.sensor_height_mm: must be > 0");
    if (!(image_width_px > 0)) throw ConfigError("calibration.image_width_px: must be > 0");
    if (!(image_height_px > 0)) throw ConfigError("calibration.image_height_px: must be > 0");
  }
};

/// Ground sample distance along the sensor width axis, mm per pixel.
inline double gsd_x(const Calibration& cal) {
  return cal.altitude_mm * cal.sensor_width_mm / (cal.focal_length_mm * cal.image_width_px);
}

inline double gsd_y(const Calibration& cal) {
  return cal.altitude_mm * cal.sensor_height_mm / (cal.focal_length_mm * cal.image_height_px);
}

/// Ground footprint of one pixel in mm^2.
inline double area_per_pixel(const Calibration& cal) {
  return gsd_x(cal) * gsd_y(cal);
}

inline double pixels_to_area(std::int64_t count, const Calibration& cal) {
  if (count < 0) throw DimensionMismatch("pixel count must be >= 0");
  return static_cast<double>(count) * area_per_pixel(cal);
}

}  // namespace leafquant
