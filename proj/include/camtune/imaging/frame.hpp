#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "camtune/error.hpp"

namespace camtune {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// BT.601 luma on the 0..255 scale. The integer numerator is exact, so grey
/// pixels map to their own level.
constexpr double luma(Rgb p) noexcept {
  return static_cast<double>(299 * p.r + 587 * p.g + 114 * p.b) / 1000.0;
}

/// Clamp to [0,255] and round half away from zero.
inline std::uint8_t to_u8(double v) noexcept {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(static_cast<int>(v + 0.5));  // v > 0: truncation is floor
}

/// 8-bit RGB raster, row-major.
class Frame {
 public:
  Frame(int width, int height, Rgb fill = {}) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Frame(int width, int height, std::vector<Rgb> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw InvalidArgument("frame: pixel count does not match " + std::to_string(width) + "x" +
                            std::to_string(height));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }

  std::span<Rgb> pixels() noexcept { return pixels_; }
  std::span<const Rgb> pixels() const noexcept { return pixels_; }

  /// Copy of the w x h window whose top-left corner is (x, y).
  Frame crop(int x, int y, int w, int h) const {
    if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > width_ || y + h > height_) {
      throw BoxOutOfBounds("crop window outside frame");
    }
    Frame out(w, h);
    for (int row = 0; row < h; ++row) {
      for (int col = 0; col < w; ++col) out.at(col, row) = at(x + col, y + row);
    }
    return out;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width < 1 || height < 1) throw InvalidArgument("frame dimensions must be >= 1");
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

}  // namespace camtune
