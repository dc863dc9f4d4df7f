#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "leafquant/errors.hpp"

namespace leafquant {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace detail {

inline void check_extent(int width, int height) {
  if (width < 1 || height < 1)
    throw DimensionMismatch("raster dimensions must be at least 1x1");
}

inline std::size_t pixel_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace detail

/// 8-bit RGB raster. Row-major, origin at the top-left corner.
class RgbImage {
 public:
  RgbImage(int width, int height, Rgb fill = {}) : width_(width), height_(height) {
    detail::check_extent(width, height);
    pixels_.assign(detail::pixel_count(width, height), fill);
  }

  RgbImage(int width, int height, std::vector<Rgb> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    detail::check_extent(width, height);
    if (pixels_.size() != detail::pixel_count(width, height))
      throw DimensionMismatch("pixel buffer size does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
  std::span<const Rgb> pixels() const { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

/// Single-channel 8-bit luma raster.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0) : width_(width), height_(height) {
    detail::check_extent(width, height);
    luma_.assign(detail::pixel_count(width, height), fill);
  }

  GrayImage(int width, int height, std::vector<std::uint8_t> luma)
      : width_(width), height_(height), luma_(std::move(luma)) {
    detail::check_extent(width, height);
    if (luma_.size() != detail::pixel_count(width, height))
      throw DimensionMismatch("luma buffer size does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int x, int y) const { return luma_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return luma_[index(x, y)]; }
  std::span<const std::uint8_t> luma() const { return luma_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> luma_;
};

/// Per-pixel boolean raster. Stored one byte per bit for cheap addressing.
class BinaryMask {
 public:
  BinaryMask(int width, int height, bool fill = false) : width_(width), height_(height) {
    detail::check_extent(width, height);
    bits_.assign(detail::pixel_count(width, height), fill ? 1 : 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { bits_[index(x, y)] = v ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  friend BinaryMask mask_and(const BinaryMask&, const BinaryMask&);
  friend BinaryMask mask_or(const BinaryMask&, const BinaryMask&);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

inline void require_same_shape(int wa, int ha, int wb, int hb) {
  if (wa != wb || ha != hb) throw DimensionMismatch("raster dimensions differ");
}

/// Number of true bits.
inline std::int64_t mask_count(const BinaryMask& mask) {
  std::int64_t n = 0;
  for (std::uint8_t b : mask.bits()) n += b;
  return n;
}

inline BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a.width(), a.height(), b.width(), b.height());
  BinaryMask out(a.width(), a.height());
  for (std::size_t i = 0; i < out.bits_.size(); ++i)
    out.bits_[i] = a.bits_[i] & b.bits_[i];
  return out;
}

inline BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a.width(), a.height(), b.width(), b.height());
  BinaryMask out(a.width(), a.height());
  for (std::size_t i = 0; i < out.bits_.size(); ++i)
    out.bits_[i] = a.bits_[i] | b.bits_[i];
  return out;
}

}  // namespace leafquant
