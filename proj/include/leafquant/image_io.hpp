#pragma once

#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "leafquant/errors.hpp"
#include "leafquant/raster.hpp"

namespace leafquant {
namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  return FilePtr(std::fopen(path.string().c_str(), mode));
}

struct PngReadGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadGuard() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

inline RgbImage decode_png(std::FILE* fp, const std::string& name) {
  PngReadGuard ctx;
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw CorruptImage("png: out of memory: " + name);
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw CorruptImage("png: out of memory: " + name);

  // All C++ objects live before the setjmp point; the longjmp lands back
  // here and the throw unwinds them normally.
  std::vector<png_byte> data;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(ctx.png)))
    throw CorruptImage("png: decode failed: " + name);

  png_init_io(ctx.png, fp);
  png_read_info(ctx.png, ctx.info);

  png_set_expand(ctx.png);  // palette -> rgb, low-depth gray -> 8, tRNS -> alpha
  png_set_gray_to_rgb(ctx.png);
  png_set_interlace_handling(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
  const int depth = png_get_bit_depth(ctx.png, ctx.info);
  const int channels = png_get_channels(ctx.png, ctx.info);
  const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
  if (w < 1 || h < 1 || w > 1u << 24 || h > 1u << 24)
    throw CorruptImage("png: unreasonable dimensions: " + name);
  if ((depth != 8 && depth != 16) || (channels != 3 && channels != 4))
    throw CorruptImage("png: unexpected layout after expansion: " + name);

  data.resize(rowbytes * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);

  std::vector<Rgb> px;
  px.reserve(static_cast<std::size_t>(w) * h);
  if (depth == 8) {
    for (png_uint_32 y = 0; y < h; ++y) {
      const png_bytep row = rows[y];
      for (png_uint_32 x = 0; x < w; ++x) {
        const png_bytep s = row + static_cast<std::size_t>(x) * channels;
        px.push_back({s[0], s[1], s[2]});
      }
    }
  } else {
    // 16-bit samples arrive big-endian; scale to 8-bit by integer
    // division by 257 (the inverse of 8->16 replication).
    for (png_uint_32 y = 0; y < h; ++y) {
      const png_bytep row = rows[y];
      for (png_uint_32 x = 0; x < w; ++x) {
        const png_bytep s = row + static_cast<std::size_t>(x) * channels * 2;
        const auto sample = [&](int c) {
          const unsigned v = static_cast<unsigned>(s[2 * c] << 8) | s[2 * c + 1];
          return static_cast<std::uint8_t>(v / 257);
        };
        px.push_back({sample(0), sample(1), sample(2)});
      }
    }
  }
  return RgbImage(static_cast<int>(w), static_cast<int>(h), std::move(px));
}

struct JpegErrorJump {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
};

inline void jpeg_error_longjmp(j_common_ptr cinfo) {
  std::longjmp(reinterpret_cast<JpegErrorJump*>(cinfo->err)->jump, 1);
}

struct JpegDecompressGuard {
  jpeg_decompress_struct* cinfo = nullptr;
  ~JpegDecompressGuard() {
    if (cinfo) jpeg_destroy_decompress(cinfo);
  }
};

inline RgbImage decode_jpeg(std::FILE* fp, const std::string& name) {
  jpeg_decompress_struct cinfo;
  JpegErrorJump jerr;
  cinfo.err = jpeg_std_error(&jerr.mgr);
  jerr.mgr.error_exit = &jpeg_error_longjmp;

  JpegDecompressGuard guard;
  std::vector<Rgb> px;
  std::vector<JSAMPLE> row;
  if (setjmp(jerr.jump))
    throw CorruptImage("jpeg: decode failed: " + name);

  jpeg_create_decompress(&cinfo);
  guard.cinfo = &cinfo;
  jpeg_stdio_src(&cinfo, fp);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;  // grayscale and YCbCr sources both land here
  jpeg_start_decompress(&cinfo);

  const int w = static_cast<int>(cinfo.output_width);
  const int h = static_cast<int>(cinfo.output_height);
  if (w < 1 || h < 1 || cinfo.output_components != 3)
    throw CorruptImage("jpeg: unexpected layout: " + name);

  row.resize(static_cast<std::size_t>(w) * 3);
  px.reserve(static_cast<std::size_t>(w) * h);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW rp = row.data();
    jpeg_read_scanlines(&cinfo, &rp, 1);
    for (int x = 0; x < w; ++x) px.push_back({row[3 * x], row[3 * x + 1], row[3 * x + 2]});
  }
  jpeg_finish_decompress(&cinfo);
  return RgbImage(w, h, std::move(px));
}

}  // namespace detail

/// Decodes a PNG or JPEG file into 8-bit RGB. The format is sniffed from the
/// leading bytes, never the extension. Alpha channels are discarded; 16-bit
/// PNG samples are scaled down by integer division by 257.
inline RgbImage load_image(const std::filesystem::path& path) {
  detail::FilePtr fp = detail::open_file(path, "rb");
  if (!fp) throw FileUnreadable("cannot open: " + path.string());

  unsigned char magic[8] = {};
  const std::size_t got = std::fread(magic, 1, sizeof magic, fp.get());
  std::rewind(fp.get());
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0)
    return detail::decode_png(fp.get(), path.string());
  if (got >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF)
    return detail::decode_jpeg(fp.get(), path.string());
  throw UnsupportedFormat("not a PNG or JPEG file: " + path.string());
}

}  // namespace leafquant
