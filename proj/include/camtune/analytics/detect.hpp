#pragma once

#include <span>
#include <string>
#include <vector>

#include "camtune/error.hpp"
#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/metrics.hpp"
#include "camtune/scene/scene.hpp"

namespace camtune {

/// Per-box acceptance rule of the detectability oracle.
struct OracleThresholds {
  double min_contrast = 0.05;
  double min_sharpness = 0.02;
  double luma_lo = 0.15;
  double luma_hi = 0.9;
};

inline void validate(const OracleThresholds& t) {
  if (!(t.min_contrast >= 0.0 && t.min_sharpness >= 0.0)) {
    throw ConfigError("oracle thresholds must be >= 0");
  }
  if (!(0.0 <= t.luma_lo && t.luma_lo < t.luma_hi && t.luma_hi <= 1.0)) {
    throw ConfigError("oracle luma window needs 0 <= lo < hi <= 1");
  }
}

struct TargetDetection {
  std::string label;
  bool detected = false;
};

struct DetectionResult {
  std::vector<TargetDetection> targets;
  int count = 0;
};

/// True when the box renders with enough local contrast, enough edge energy,
/// and a mean luma inside the window.
inline bool is_detectable(const Frame& frame, const TargetBox& box, const OracleThresholds& t) {
  if (box.x < 0 || box.y < 0 || box.w < 1 || box.h < 1 || box.x + box.w > frame.width() ||
      box.y + box.h > frame.height()) {
    throw BoxOutOfBounds("target '" + box.label + "' outside the frame");
  }
  const Frame window = frame.crop(box.x, box.y, box.w, box.h);
  const double mean = measure_brightness(window);
  return measure_contrast(window) >= t.min_contrast &&
         measure_sharpness(window) >= t.min_sharpness && mean >= t.luma_lo && mean <= t.luma_hi;
}

inline DetectionResult detect_targets(const Frame& frame, std::span<const TargetBox> targets,
                                      const OracleThresholds& t = {}) {
  DetectionResult result;
  result.targets.reserve(targets.size());
  for (const TargetBox& box : targets) {
    const bool hit = is_detectable(frame, box, t);
    result.targets.push_back({box.label, hit});
    result.count += hit ? 1 : 0;
  }
  return result;
}

}  // namespace camtune
