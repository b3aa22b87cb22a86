#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "camtune/error.hpp"
#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/metrics.hpp"

namespace camtune {

/// No-reference quality score used as the tuning reward.
class QualityEstimator {
 public:
  virtual ~QualityEstimator() = default;

  /// Normalised score in [0,1].
  virtual double score(const Frame& frame) const = 0;

  /// Same as score(); estimators built on the standard measurements may
  /// reuse `metrics` (which must be measure_all(frame)) instead of recomputing.
  virtual double score_measured(const Frame& frame, const MetricVector& metrics) const {
    (void)metrics;
    return score(frame);
  }

  virtual std::string name() const = 0;
};

/// Knee points of the per-metric desirability curves.
struct DesirabilityShape {
  double brightness_peak = 0.5;
  double contrast_knee = 0.6;
  double colorfulness_knee = 0.5;
  double sharpness_knee = 0.2;
};

struct CompositeEstimatorConfig {
  // brightness, contrast, colorfulness, sharpness
  std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};
  DesirabilityShape shape;
};

inline void validate(const CompositeEstimatorConfig& cfg) {
  double sum = 0.0;
  for (double w : cfg.weights) {
    if (!(w >= 0.0)) throw ConfigError("composite weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("composite weights must sum to 1");
  const auto& s = cfg.shape;
  if (!(s.brightness_peak > 0.0 && s.brightness_peak < 1.0)) {
    throw ConfigError("brightness peak must lie in (0,1)");
  }
  if (!(s.contrast_knee > 0.0 && s.colorfulness_knee > 0.0 && s.sharpness_knee > 0.0)) {
    throw ConfigError("desirability knees must be > 0");
  }
}

/// Weighted mean of desirabilities: a tent peaking at the target brightness,
/// and linear ramps that saturate at each knee for the other three metrics.
inline double score_metrics(const MetricVector& m, const CompositeEstimatorConfig& cfg) {
  const auto& s = cfg.shape;
  const double half_width = std::max(s.brightness_peak, 1.0 - s.brightness_peak);
  const double d_b = std::max(0.0, 1.0 - std::abs(m.brightness - s.brightness_peak) / half_width);
  const double d_c = std::min(m.contrast / s.contrast_knee, 1.0);
  const double d_col = std::min(m.colorfulness / s.colorfulness_knee, 1.0);
  const double d_s = std::min(m.sharpness / s.sharpness_knee, 1.0);
  const auto& w = cfg.weights;
  return std::clamp(w[0] * d_b + w[1] * d_c + w[2] * d_col + w[3] * d_s, 0.0, 1.0);
}

inline double score_composite(const Frame& frame, const CompositeEstimatorConfig& cfg = {}) {
  return score_metrics(measure_all(frame), cfg);
}

class CompositeEstimator final : public QualityEstimator {
 public:
  explicit CompositeEstimator(CompositeEstimatorConfig cfg = {}) : cfg_(cfg) { validate(cfg_); }

  double score(const Frame& frame) const override { return score_composite(frame, cfg_); }
  double score_measured(const Frame&, const MetricVector& metrics) const override {
    return score_metrics(metrics, cfg_);
  }
  std::string name() const override { return "composite"; }
  const CompositeEstimatorConfig& config() const noexcept { return cfg_; }

 private:
  CompositeEstimatorConfig cfg_;
};

/// Same score for every frame. Gives the agent no signal; a baseline.
class ConstantEstimator final : public QualityEstimator {
 public:
  explicit ConstantEstimator(double value = 0.5) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) throw ConfigError("constant score must lie in [0,1]");
  }

  double score(const Frame&) const override { return value_; }
  std::string name() const override { return "constant"; }

 private:
  double value_;
};

}  // namespace camtune
