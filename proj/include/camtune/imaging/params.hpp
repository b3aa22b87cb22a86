#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "camtune/error.hpp"

namespace camtune {

enum class Param : std::uint8_t { kBrightness = 0, kContrast = 1, kColor = 2, kSharpness = 3 };

inline constexpr std::array<Param, 4> kAllParams = {Param::kBrightness, Param::kContrast,
                                                     Param::kColor, Param::kSharpness};

constexpr std::string_view param_name(Param p) noexcept {
  switch (p) {
    case Param::kBrightness: return "brightness";
    case Param::kContrast: return "contrast";
    case Param::kColor: return "color";
    case Param::kSharpness: return "sharpness";
  }
  return "?";
}

inline constexpr int kParamMin = 0;
inline constexpr int kParamMax = 100;
inline constexpr int kDefaultParamStep = 10;

/// The four camera settings, each on the 0..100 grid.
struct ParamVector {
  std::array<int, 4> values{50, 50, 50, 50};

  constexpr ParamVector() = default;
  constexpr ParamVector(int brightness, int contrast, int color, int sharpness)
      : values{brightness, contrast, color, sharpness} {}

  constexpr int& operator[](Param p) noexcept { return values[static_cast<std::size_t>(p)]; }
  constexpr int operator[](Param p) const noexcept { return values[static_cast<std::size_t>(p)]; }

  constexpr int brightness() const noexcept { return values[0]; }
  constexpr int contrast() const noexcept { return values[1]; }
  constexpr int color() const noexcept { return values[2]; }
  constexpr int sharpness() const noexcept { return values[3]; }

  friend constexpr bool operator==(const ParamVector&, const ParamVector&) = default;
};

constexpr bool is_valid_step(int step) noexcept {
  return step >= 1 && step <= kParamMax && kParamMax % step == 0;
}

constexpr bool is_valid_value(int value, int step = kDefaultParamStep) noexcept {
  return value >= kParamMin && value <= kParamMax && value % step == 0;
}

constexpr bool is_valid(const ParamVector& p, int step = kDefaultParamStep) noexcept {
  for (int v : p.values) {
    if (!is_valid_value(v, step)) return false;
  }
  return true;
}

inline void require_valid(const ParamVector& p, int step = kDefaultParamStep) {
  if (!is_valid(p, step)) {
    throw OutOfRange("parameter vector off the 0..100 grid with step " + std::to_string(step));
  }
}

/// Per-transform blend strength; 1 is identity.
struct EnhancementFactors {
  double brightness = 1.0;
  double contrast = 1.0;
  double color = 1.0;
  double sharpness = 1.0;

  friend constexpr bool operator==(const EnhancementFactors&,
                                   const EnhancementFactors&) = default;
};

/// Linear map centred on the mid setting: 50 -> 1.0, 0 -> 0.0, 100 -> 2.0.
constexpr EnhancementFactors params_to_factors(const ParamVector& p) noexcept {
  return {p.brightness() / 50.0, p.contrast() / 50.0, p.color() / 50.0, p.sharpness() / 50.0};
}

/// Measured image statistics, each normalised to [0,1].
struct MetricVector {
  double brightness = 0.0;
  double contrast = 0.0;
  double colorfulness = 0.0;
  double sharpness = 0.0;

  friend constexpr bool operator==(const MetricVector&, const MetricVector&) = default;
};

}  // namespace camtune
