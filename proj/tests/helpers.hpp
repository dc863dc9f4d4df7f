#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leafquant/raster.hpp"

namespace testutil {

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    path_ = base / (tag + "_" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline void write_bytes(const std::filesystem::path& p, const unsigned char* data,
                        std::size_t len) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(len));
}

/// Independent BT.601 oracle: exact decimal arithmetic via integers,
/// round half away from zero expressed as a remainder comparison.
inline int oracle_luma(int r, int g, int b) {
  const long long n = 299LL * r + 587LL * g + 114LL * b;
  return static_cast<int>(n / 1000 + (n % 1000 >= 500 ? 1 : 0));
}

/// Reference hexcone inverse, double arithmetic throughout.
inline void oracle_hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
  const double c = v * s;
  const double x = c * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
  const double m = v - c;
  double rp = 0, gp = 0, bp = 0;
  if (h < 60) { rp = c; gp = x; }
  else if (h < 120) { rp = x; gp = c; }
  else if (h < 180) { gp = c; bp = x; }
  else if (h < 240) { gp = x; bp = c; }
  else if (h < 300) { rp = x; bp = c; }
  else { rp = c; bp = x; }
  r = (rp + m) * 255.0;
  g = (gp + m) * 255.0;
  b = (bp + m) * 255.0;
}

/// Brute-force disk rasterization: per-pixel membership over the whole canvas.
inline std::int64_t oracle_disk_pixels(int cx, int cy, int r, int w, int h) {
  std::int64_t n = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::int64_t dx = x - cx;
      const std::int64_t dy = y - cy;
      if (dx * dx + dy * dy <= static_cast<std::int64_t>(r) * r) ++n;
    }
  return n;
}

inline leafquant::RgbImage uniform_image(int w, int h, leafquant::Rgb color) {
  return leafquant::RgbImage(w, h, color);
}

inline leafquant::RgbImage random_image(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<leafquant::Rgb> px;
  px.reserve(static_cast<std::size_t>(w) * h);
  for (int i = 0; i < w * h; ++i) {
    const std::uint32_t u = rng();
    px.push_back({static_cast<std::uint8_t>(u & 0xFF), static_cast<std::uint8_t>((u >> 8) & 0xFF),
                  static_cast<std::uint8_t>((u >> 16) & 0xFF)});
  }
  return leafquant::RgbImage(w, h, std::move(px));
}

inline leafquant::BinaryMask random_mask(int w, int h, std::uint32_t seed, double density = 0.5) {
  std::mt19937 rng(seed);
  leafquant::BinaryMask m(w, h);
  const std::uint32_t cut = static_cast<std::uint32_t>(density * 4294967295.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, rng() < cut);
  return m;
}

}  // namespace testutil
