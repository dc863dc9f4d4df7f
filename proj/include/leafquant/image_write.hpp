#pragma once

#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "leafquant/image_io.hpp"
#include "leafquant/raster.hpp"

namespace leafquant {
namespace detail {

struct PngWriteGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteGuard() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

/// Encodes into path + ".tmp" and renames, so a failed write leaves nothing.
template <typename EncodeFn>
void write_image_atomic(const std::filesystem::path& path, EncodeFn&& encode) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    FilePtr fp = open_file(tmp, "wb");
    if (!fp) throw IoError("cannot open for writing: " + tmp.string());
    try {
      encode(fp.get());
    } catch (...) {
      fp.reset();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw;
    }
    if (std::fflush(fp.get()) != 0) {
      fp.reset();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into place: " + path.string());
  }
}

inline void encode_png(std::FILE* fp, int width, int height, int color_type,
                       const std::vector<png_byte>& data, const std::string& name) {
  PngWriteGuard ctx;
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("png: out of memory: " + name);
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("png: out of memory: " + name);

  std::vector<png_bytep> rows(height);
  const std::size_t rowbytes = data.size() / height;
  if (setjmp(png_jmpbuf(ctx.png)))
    throw IoError("png: encode failed: " + name);

  png_init_io(ctx.png, fp);
  png_set_IHDR(ctx.png, ctx.info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(data.data()) + static_cast<std::size_t>(y) * rowbytes;
  png_write_image(ctx.png, rows.data());
  png_write_end(ctx.png, ctx.info);
}

}  // namespace detail

inline void save_png(const RgbImage& image, const std::filesystem::path& path) {
  std::vector<png_byte> data;
  data.reserve(image.pixels().size() * 3);
  for (Rgb p : image.pixels()) {
    data.push_back(p.r);
    data.push_back(p.g);
    data.push_back(p.b);
  }
  detail::write_image_atomic(path, [&](std::FILE* fp) {
    detail::encode_png(fp, image.width(), image.height(), PNG_COLOR_TYPE_RGB, data,
                       path.string());
  });
}

/// Masks are written as 8-bit grayscale, white for true.
inline void save_png(const BinaryMask& mask, const std::filesystem::path& path) {
  std::vector<png_byte> data;
  data.reserve(mask.bits().size());
  for (std::uint8_t b : mask.bits()) data.push_back(b ? 255 : 0);
  detail::write_image_atomic(path, [&](std::FILE* fp) {
    detail::encode_png(fp, mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, data,
                       path.string());
  });
}

inline void save_jpeg(const RgbImage& image, const std::filesystem::path& path,
                      int quality = 90) {
  detail::write_image_atomic(path, [&](std::FILE* fp) {
    jpeg_compress_struct cinfo;
    detail::JpegErrorJump jerr;
    cinfo.err = jpeg_std_error(&jerr.mgr);
    jerr.mgr.error_exit = &detail::jpeg_error_longjmp;

    struct Guard {
      jpeg_compress_struct* cinfo = nullptr;
      ~Guard() {
        if (cinfo) jpeg_destroy_compress(cinfo);
      }
    } guard;
    std::vector<JSAMPLE> row(static_cast<std::size_t>(image.width()) * 3);
    if (setjmp(jerr.jump))
      throw IoError("jpeg: encode failed: " + path.string());

    jpeg_create_compress(&cinfo);
    guard.cinfo = &cinfo;
    jpeg_stdio_dest(&cinfo, fp);
    cinfo.image_width = static_cast<JDIMENSION>(image.width());
    cinfo.image_height = static_cast<JDIMENSION>(image.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
      const int y = static_cast<int>(cinfo.next_scanline);
      for (int x = 0; x < image.width(); ++x) {
        const Rgb p = image.at(x, y);
        row[3 * x] = p.r;
        row[3 * x + 1] = p.g;
        row[3 * x + 2] = p.b;
      }
      JSAMPROW rp = row.data();
      jpeg_write_scanlines(&cinfo, &rp, 1);
    }
    jpeg_finish_compress(&cinfo);
  });
}

}  // namespace leafquant
