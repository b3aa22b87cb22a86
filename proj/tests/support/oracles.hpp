#pragma once

// Brute-force reference implementations used only by tests. Written as
// straight per-pixel loops in long double with explicit kernels, independent
// of the library's code paths.

#include <cmath>
#include <vector>

#include "camtune/imaging/frame.hpp"

namespace oracle {

using camtune::Frame;

inline long double luma(const Frame& f, int x, int y) {
  const auto& p = f.at(x, y);
  return 0.299L * p.r + 0.587L * p.g + 0.114L * p.b;
}

inline double brightness(const Frame& f) {
  long double s = 0;
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) s += luma(f, x, y);
  return static_cast<double>(s / (255.0L * f.width() * f.height()));
}

inline double contrast(const Frame& f) {
  const long double n = static_cast<long double>(f.width()) * f.height();
  long double s = 0, s2 = 0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      const long double v = luma(f, x, y) / 255.0L;
      s += v;
      s2 += v * v;
    }
  }
  const long double var = std::max(0.0L, s2 / n - (s / n) * (s / n));
  return static_cast<double>(std::min(1.0L, std::sqrt(var) / 0.5L));
}

inline double colorfulness_raw(const Frame& f) {
  const long double n = static_cast<long double>(f.width()) * f.height();
  long double srg = 0, syb = 0, srg2 = 0, syb2 = 0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      const auto& p = f.at(x, y);
      const long double rg = static_cast<long double>(p.r) - p.g;
      const long double yb = (static_cast<long double>(p.r) + p.g) / 2.0L - p.b;
      srg += rg;
      syb += yb;
      srg2 += rg * rg;
      syb2 += yb * yb;
    }
  }
  const long double mrg = srg / n, myb = syb / n;
  const long double vrg = std::max(0.0L, srg2 / n - mrg * mrg);
  const long double vyb = std::max(0.0L, syb2 / n - myb * myb);
  return static_cast<double>(std::sqrt(vrg + vyb) + 0.3L * std::sqrt(mrg * mrg + myb * myb));
}

inline double colorfulness(const Frame& f) { return std::min(1.0, colorfulness_raw(f) / 150.0); }

inline double sharpness(const Frame& f) {
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  long double total = 0;
  for (int y = 1; y < f.height() - 1; ++y) {
    for (int x = 1; x < f.width() - 1; ++x) {
      long double gx = 0, gy = 0;
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
          const long double v = luma(f, x + i - 1, y + j - 1);
          gx += kx[j][i] * v;
          gy += ky[j][i] * v;
        }
      }
      total += std::sqrt(gx * gx + gy * gy);
    }
  }
  const long double mean = total / ((f.width() - 2.0L) * (f.height() - 2.0L));
  return static_cast<double>(std::min(1.0L, mean / (1020.0L * std::sqrt(2.0L))));
}

// Enhancement stages, one formula per pixel and channel, no tables.
inline std::uint8_t round8(long double v) {
  if (v <= 0) return 0;
  if (v >= 255) return 255;
  return static_cast<std::uint8_t>(std::floor(v + 0.5L));
}

template <typename DegenerateFn>
Frame blend(const Frame& in, double factor, DegenerateFn degenerate) {
  Frame out = in;
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < in.width(); ++x) {
      const auto& p = in.at(x, y);
      const int ch[3] = {p.r, p.g, p.b};
      std::uint8_t o[3];
      for (int c = 0; c < 3; ++c) {
        const double d = degenerate(x, y, c);
        o[c] = round8(d + factor * (ch[c] - d));
      }
      out.at(x, y) = {o[0], o[1], o[2]};
    }
  }
  return out;
}

inline Frame enhance(const Frame& frame, double fb, double fc, double fcol, double fs) {
  Frame a = blend(frame, fb, [](int, int, int) { return 0.0; });
  // Row-major double accumulation, so the .5 rounding boundaries agree.
  double mean = 0;
  for (const auto& p : a.pixels()) mean += (299 * p.r + 587 * p.g + 114 * p.b) / 1000.0;
  mean /= static_cast<double>(a.size());
  Frame b = blend(a, fc, [&](int, int, int) { return mean; });
  Frame c = blend(b, fcol, [&](int x, int y, int) {
    const auto& p = b.at(x, y);
    return (299 * p.r + 587 * p.g + 114 * p.b) / 1000.0;
  });
  static const int k[3][3] = {{1, 1, 1}, {1, 5, 1}, {1, 1, 1}};
  return blend(c, fs, [&](int x, int y, int ch) {
    const auto& p = c.at(x, y);
    const int own[3] = {p.r, p.g, p.b};
    if (x == 0 || y == 0 || x == c.width() - 1 || y == c.height() - 1) return double(own[ch]);
    int acc = 0;
    for (int j = -1; j <= 1; ++j) {
      for (int i = -1; i <= 1; ++i) {
        const auto& q = c.at(x + i, y + j);
        const int v[3] = {q.r, q.g, q.b};
        acc += k[j + 1][i + 1] * v[ch];
      }
    }
    return acc / 13.0;
  });
}

}  // namespace oracle
