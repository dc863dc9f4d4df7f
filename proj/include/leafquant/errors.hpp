#pragma once

#include <stdexcept>

namespace leafquant {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File missing or not readable.
struct FileUnreadable : Error { using Error::Error; };
/// Byte stream is neither PNG nor JPEG.
struct UnsupportedFormat : Error { using Error::Error; };
/// Decoder rejected the stream.
struct CorruptImage : Error { using Error::Error; };
/// Rasters that must share dimensions do not.
struct DimensionMismatch : Error { using Error::Error; };
/// Raster below the minimum extent of the operation.
struct ImageTooSmall : Error { using Error::Error; };
/// Synthetic scene spec violates a color or containment invariant.
struct SpecInvalid : Error { using Error::Error; };
/// Config file missing, malformed, or holding an out-of-range field.
struct ConfigError : Error { using Error::Error; };
/// Output file could not be written.
struct IoError : Error { using Error::Error; };

}  // namespace leafquant
