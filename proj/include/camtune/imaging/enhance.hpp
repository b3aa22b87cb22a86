#pragma once

#include <array>

#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/params.hpp"

namespace camtune {

namespace detail {

// out = degenerate + f * (in - degenerate), rounded to 8 bits.
inline std::uint8_t blend(double degenerate, std::uint8_t in, double f) noexcept {
  return to_u8(degenerate + f * (static_cast<double>(in) - degenerate));
}

// Per-channel transfer table for stages whose degenerate is the same for
// every pixel; table[v] == blend(degenerate, v, f).
inline std::array<std::uint8_t, 256> blend_table(double degenerate, double f) noexcept {
  std::array<std::uint8_t, 256> table{};
  for (int v = 0; v < 256; ++v) table[v] = blend(degenerate, static_cast<std::uint8_t>(v), f);
  return table;
}

inline void apply_table(Frame& frame, const std::array<std::uint8_t, 256>& table) noexcept {
  for (Rgb& p : frame.pixels()) p = {table[p.r], table[p.g], table[p.b]};
}

inline double mean_luma(const Frame& frame) noexcept {
  double sum = 0.0;
  for (const Rgb& p : frame.pixels()) sum += luma(p);
  return sum / static_cast<double>(frame.size());
}

}  // namespace detail

/// Brightness: blend against black.
inline Frame enhance_brightness(const Frame& in, double f) {
  Frame out = in;
  if (f == 1.0) return out;
  detail::apply_table(out, detail::blend_table(0.0, f));
  return out;
}

/// Contrast: blend against a uniform image at the mean luma.
inline Frame enhance_contrast(const Frame& in, double f) {
  Frame out = in;
  if (f == 1.0) return out;
  detail::apply_table(out, detail::blend_table(detail::mean_luma(in), f));
  return out;
}

/// Colour saturation: blend against the pixel's own grey level.
inline Frame enhance_color(const Frame& in, double f) {
  Frame out = in;
  if (f == 1.0) return out;
  for (Rgb& p : out.pixels()) {
    const double grey = luma(p);
    p = {detail::blend(grey, p.r, f), detail::blend(grey, p.g, f), detail::blend(grey, p.b, f)};
  }
  return out;
}

/// Sharpness: blend against a 3x3 smoothed copy (kernel [[1,1,1],[1,5,1],[1,1,1]]/13).
/// Border pixels have no full neighbourhood; their degenerate is the pixel itself.
inline Frame enhance_sharpness(const Frame& in, double f) {
  Frame out = in;
  if (f == 1.0) return out;
  const int w = in.width();
  const int h = in.height();
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      // Integer sums are exact; centre weight 5 = 1 (in the 3x3 sum) + 4.
      const Rgb& p = in.at(x, y);
      std::array<int, 3> acc{4 * p.r, 4 * p.g, 4 * p.b};
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const Rgb& q = in.at(x + dx, y + dy);
          acc[0] += q.r;
          acc[1] += q.g;
          acc[2] += q.b;
        }
      }
      out.at(x, y) = {detail::blend(acc[0] / 13.0, p.r, f), detail::blend(acc[1] / 13.0, p.g, f),
                      detail::blend(acc[2] / 13.0, p.b, f)};
    }
  }
  return out;
}

/// Applies the four transforms in the fixed order brightness, contrast,
/// colour, sharpness. Each stage rounds back to 8 bits.
inline Frame enhance(const Frame& frame, const EnhancementFactors& f) {
  Frame out = enhance_brightness(frame, f.brightness);
  out = enhance_contrast(out, f.contrast);
  out = enhance_color(out, f.color);
  return enhance_sharpness(out, f.sharpness);
}

}  // namespace camtune
