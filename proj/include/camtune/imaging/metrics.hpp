#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/params.hpp"

namespace camtune {

// Normalising constants for the metric scales.
inline constexpr double kContrastRawMax = 0.5;
inline constexpr double kColorfulnessScale = 150.0;
inline constexpr double kSobelMax = 1020.0 * std::numbers::sqrt2;

namespace detail {

/// Luma (0..255) of every pixel, row-major.
inline std::vector<double> luma_plane(const Frame& frame) {
  std::vector<double> y(frame.size());
  const auto px = frame.pixels();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = luma(px[i]);
  return y;
}

inline double brightness_of(const std::vector<double>& y) noexcept {
  double sum = 0.0;
  for (double v : y) sum += v;
  return std::clamp(sum / (255.0 * static_cast<double>(y.size())), 0.0, 1.0);
}

inline double contrast_of(const std::vector<double>& y) noexcept {
  const double n = static_cast<double>(y.size());
  double sum = 0.0;
  for (double v : y) sum += v / 255.0;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : y) {
    const double d = v / 255.0 - mean;
    ss += d * d;
  }
  return std::clamp(std::sqrt(ss / n) / kContrastRawMax, 0.0, 1.0);
}

inline double sharpness_of(const std::vector<double>& y, int w, int h) {
  if (w < 3 || h < 3) throw FrameTooSmall("sharpness needs a frame of at least 3x3");
  const auto at = [&](int col, int row) {
    return y[static_cast<std::size_t>(row) * static_cast<std::size_t>(w) +
             static_cast<std::size_t>(col)];
  };
  double total = 0.0;
  for (int row = 1; row + 1 < h; ++row) {
    for (int col = 1; col + 1 < w; ++col) {
      const double gx = (at(col + 1, row - 1) + 2.0 * at(col + 1, row) + at(col + 1, row + 1)) -
                        (at(col - 1, row - 1) + 2.0 * at(col - 1, row) + at(col - 1, row + 1));
      const double gy = (at(col - 1, row + 1) + 2.0 * at(col, row + 1) + at(col + 1, row + 1)) -
                        (at(col - 1, row - 1) + 2.0 * at(col, row - 1) + at(col + 1, row - 1));
      total += std::sqrt(gx * gx + gy * gy);
    }
  }
  const double interior = static_cast<double>(w - 2) * static_cast<double>(h - 2);
  return std::clamp(total / interior / kSobelMax, 0.0, 1.0);
}

}  // namespace detail

/// Mean BT.601 luma / 255.
inline double measure_brightness(const Frame& frame) {
  return detail::brightness_of(detail::luma_plane(frame));
}

/// RMS contrast: population std-dev of luma/255, rescaled from [0,0.5] to [0,1].
inline double measure_contrast(const Frame& frame) {
  return detail::contrast_of(detail::luma_plane(frame));
}

/// Hasler-Suesstrunk colourfulness, divided by 150 and capped at 1.
inline double measure_colorfulness(const Frame& frame) noexcept {
  const double n = static_cast<double>(frame.size());
  double sum_rg = 0.0, sum_yb = 0.0;
  for (const Rgb& p : frame.pixels()) {
    sum_rg += static_cast<double>(p.r) - p.g;
    sum_yb += 0.5 * (static_cast<double>(p.r) + p.g) - p.b;
  }
  const double mu_rg = sum_rg / n;
  const double mu_yb = sum_yb / n;
  double var_rg = 0.0, var_yb = 0.0;
  for (const Rgb& p : frame.pixels()) {
    const double rg = static_cast<double>(p.r) - p.g - mu_rg;
    const double yb = 0.5 * (static_cast<double>(p.r) + p.g) - p.b - mu_yb;
    var_rg += rg * rg;
    var_yb += yb * yb;
  }
  var_rg /= n;
  var_yb /= n;
  const double raw =
      std::sqrt(var_rg + var_yb) + 0.3 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb);
  return std::min(raw / kColorfulnessScale, 1.0);
}

/// Mean Sobel gradient magnitude of the luma plane over interior pixels,
/// normalised by the largest attainable magnitude.
inline double measure_sharpness(const Frame& frame) {
  if (frame.width() < 3 || frame.height() < 3) {
    throw FrameTooSmall("sharpness needs a frame of at least 3x3");
  }
  return detail::sharpness_of(detail::luma_plane(frame), frame.width(), frame.height());
}

inline MetricVector measure_all(const Frame& frame) {
  if (frame.width() < 3 || frame.height() < 3) {
    throw FrameTooSmall("measurements need a frame of at least 3x3");
  }
  const std::vector<double> y = detail::luma_plane(frame);
  MetricVector m;
  m.brightness = detail::brightness_of(y);
  m.contrast = detail::contrast_of(y);
  m.colorfulness = measure_colorfulness(frame);
  m.sharpness = detail::sharpness_of(y, frame.width(), frame.height());
  return m;
}

}  // namespace camtune
