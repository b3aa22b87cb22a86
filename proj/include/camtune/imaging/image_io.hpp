#pragma once

// Frame codecs: PNG (libpng simplified API), JPEG decode (libjpeg), binary PPM.

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

extern "C" {
#include <jpeglib.h>
}

#include "camtune/imaging/frame.hpp"

namespace camtune {

using Bytes = std::vector<std::uint8_t>;

namespace detail {

inline Frame frame_from_rgb_bytes(int w, int h, const std::uint8_t* data) {
  std::vector<Rgb> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = {data[3 * i], data[3 * i + 1], data[3 * i + 2]};
  return Frame(w, h, std::move(px));
}

inline Bytes rgb_bytes(const Frame& frame) {
  Bytes out;
  out.reserve(frame.size() * 3);
  for (const Rgb& p : frame.pixels()) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

extern "C" inline void jpeg_error_exit_jump(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Plain-C body so the longjmp never crosses a C++ object with a destructor.
inline bool jpeg_decode_raw(const std::uint8_t* data, std::size_t size, int* w, int* h,
                            std::uint8_t** rgb, char* message) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  *rgb = nullptr;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit_jump;
  if (setjmp(err.jump)) {
    std::memcpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    std::free(*rgb);
    *rgb = nullptr;
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, const_cast<std::uint8_t*>(data), static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  *w = static_cast<int>(cinfo.output_width);
  *h = static_cast<int>(cinfo.output_height);
  const std::size_t stride = static_cast<std::size_t>(*w) * 3;
  *rgb = static_cast<std::uint8_t*>(std::malloc(stride * static_cast<std::size_t>(*h)));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = *rgb + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

}  // namespace detail

inline Bytes encode_png(const Frame& frame) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width());
  image.height = static_cast<png_uint_32>(frame.height());
  image.format = PNG_FORMAT_RGB;
  const Bytes rgb = detail::rgb_bytes(frame);
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, rgb.data(), 0, nullptr)) {
    throw IoError(std::string("png encode: ") + image.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, rgb.data(), 0, nullptr)) {
    throw IoError(std::string("png encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

inline Frame decode_png(const Bytes& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw DecodeError(std::string("png decode: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;  // alpha, grey and palette inputs are converted
  Bytes rgb(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgb.data(), 0, nullptr)) {
    png_image_free(&image);
    throw DecodeError(std::string("png decode: ") + image.message);
  }
  return detail::frame_from_rgb_bytes(static_cast<int>(image.width),
                                      static_cast<int>(image.height), rgb.data());
}

inline Frame decode_jpeg(const Bytes& bytes) {
  int w = 0, h = 0;
  std::uint8_t* rgb = nullptr;
  char message[JMSG_LENGTH_MAX] = {};
  if (!detail::jpeg_decode_raw(bytes.data(), bytes.size(), &w, &h, &rgb, message)) {
    throw DecodeError(std::string("jpeg decode: ") + message);
  }
  try {
    Frame out = detail::frame_from_rgb_bytes(w, h, rgb);
    std::free(rgb);
    return out;
  } catch (...) {
    std::free(rgb);
    throw;
  }
}

inline Bytes encode_ppm(const Frame& frame) {
  const std::string header =
      "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  const Bytes rgb = detail::rgb_bytes(frame);
  out.insert(out.end(), rgb.begin(), rgb.end());
  return out;
}

inline Frame decode_ppm(const Bytes& bytes) {
  std::size_t pos = 0;
  const auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) tok.push_back(static_cast<char>(bytes[pos++]));
    return tok;
  };
  if (next_token() != "P6") throw DecodeError("ppm: missing P6 magic");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(next_token());
    h = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw DecodeError("ppm: malformed header");
  }
  if (w < 1 || h < 1 || maxval != 255) throw DecodeError("ppm: unsupported header");
  ++pos;  // single whitespace byte before the raster
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
  if (pos + need > bytes.size()) throw DecodeError("ppm: truncated raster");
  return detail::frame_from_rgb_bytes(w, h, bytes.data() + pos);
}

/// Sniffs the signature and decodes PNG or JPEG.
inline Frame decode_image(const Bytes& bytes) {
  static constexpr std::uint8_t kPngMagic[] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kPngMagic, 4) == 0) return decode_png(bytes);
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    return decode_jpeg(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return decode_ppm(bytes);
  throw DecodeError("unrecognised image format");
}

inline Frame load_image(const std::filesystem::path& path) {
  return decode_image(detail::read_file(path));
}

/// Writes PNG unless the extension is .ppm.
inline void save_image(const Frame& frame, const std::filesystem::path& path) {
  detail::write_file(path, path.extension() == ".ppm" ? encode_ppm(frame) : encode_png(frame));
}

}  // namespace camtune
