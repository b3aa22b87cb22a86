#pragma once

#include <cstdint>
#include <memory>

#include "camtune/imaging/enhance.hpp"
#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/params.hpp"
#include "camtune/scene/scene.hpp"

namespace camtune {

/// A camera the tuning loop can read, actuate and capture from.
/// After set_param returns, get_params reflects the new value.
class CameraBackend {
 public:
  virtual ~CameraBackend() = default;

  virtual ParamVector get_params() = 0;
  virtual void set_param(Param which, int value) = 0;
  virtual Frame capture(double t) = 0;
};

/// Logical clock in integer microseconds so accumulated frame periods and
/// actuation delays stay exact.
class SimClock {
 public:
  std::int64_t micros() const noexcept { return micros_; }
  double seconds() const noexcept { return static_cast<double>(micros_) / 1e6; }
  void advance_us(std::int64_t us) noexcept { micros_ += us; }
  void advance_ms(std::int64_t ms) noexcept { micros_ += ms * 1000; }

 private:
  std::int64_t micros_ = 0;
};

/// Scene simulator plus the enhancement pipeline. Each parameter change
/// advances the camera's clock by the actuation latency.
class SimulatedCamera final : public CameraBackend {
 public:
  static constexpr int kDefaultLatencyMs = 200;

  SimulatedCamera(std::shared_ptr<const SceneManifest> scene, ParamVector initial,
                  int step = kDefaultParamStep, int latency_ms = kDefaultLatencyMs)
      : scene_(std::move(scene)), params_(initial), step_(step), latency_ms_(latency_ms) {
    if (!scene_) throw InvalidArgument("simulated camera needs a scene");
    if (!is_valid_step(step_)) throw InvalidArgument("parameter step must divide 100");
    if (latency_ms_ < 0) throw InvalidArgument("actuation latency must be >= 0");
    require_valid(params_, step_);
  }

  ParamVector get_params() override { return params_; }

  void set_param(Param which, int value) override {
    if (!is_valid_value(value, step_)) {
      throw OutOfRange(std::string(param_name(which)) + " value " + std::to_string(value) +
                       " is not on the 0..100 grid");
    }
    params_[which] = value;
    clock_.advance_ms(latency_ms_);
    ++actuations_;
  }

  Frame capture(double t) override {
    if (!(t >= 0.0)) throw InvalidArgument("capture time must be >= 0");
    const Frame latent =
        apply_condition(scene_->base, condition_at(scene_->schedule, t), t, scene_->seed);
    return enhance(latent, params_to_factors(params_));
  }

  /// Places the camera at a new setting without charging actuation latency
  /// (used to emulate external disturbances during training).
  void reset_params(const ParamVector& p) {
    require_valid(p, step_);
    params_ = p;
  }

  SimClock& clock() noexcept { return clock_; }
  const SimClock& clock() const noexcept { return clock_; }
  std::int64_t actuations() const noexcept { return actuations_; }
  int latency_ms() const noexcept { return latency_ms_; }
  const SceneManifest& scene() const noexcept { return *scene_; }

 private:
  std::shared_ptr<const SceneManifest> scene_;
  ParamVector params_;
  int step_;
  int latency_ms_;
  SimClock clock_;
  std::int64_t actuations_ = 0;
};

}  // namespace camtune
