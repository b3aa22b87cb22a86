#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "camtune/analytics/detect.hpp"
#include "camtune/reward/estimator.hpp"
#include "camtune/reward/external.hpp"
#include "camtune/rl/agent.hpp"
#include "camtune/rl/persistence.hpp"

namespace camtune::harness {

/// Deliberately poor starting settings for the side-by-side runs.
inline const std::map<std::string, ParamVector>& default_presets() {
  static const std::map<std::string, ParamVector> presets = {
      {"S1", {20, 20, 50, 50}},
      {"S2", {80, 80, 50, 50}},
      {"S3", {50, 10, 10, 50}},
      {"S4", {50, 90, 90, 50}},
  };
  return presets;
}

struct ConstantEstimatorConfig {
  double value = 0.5;
};

struct EstimatorSpec {
  std::string name = "composite";
  std::variant<CompositeEstimatorConfig, ExternalEstimatorConfig, ConstantEstimatorConfig> config;
};

inline std::unique_ptr<QualityEstimator> make_estimator(const EstimatorSpec& spec) {
  return std::visit(
      [](const auto& cfg) -> std::unique_ptr<QualityEstimator> {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, CompositeEstimatorConfig>) {
          return std::make_unique<CompositeEstimator>(cfg);
        } else if constexpr (std::is_same_v<T, ExternalEstimatorConfig>) {
          return std::make_unique<ExternalEstimator>(cfg);
        } else {
          return std::make_unique<ConstantEstimator>(cfg.value);
        }
      },
      spec.config);
}

enum class RestartPool { kRandom, kPresets };

/// Offline training before exploitation. Every restart_interval seconds of
/// simulated time the camera is moved to a new setting, emulating a changed
/// environment, and the agent starts a new episode. The new setting is a
/// random grid point, or the next preset in name order.
struct TrainingConfig {
  std::int64_t steps = 20000;
  std::optional<double> epsilon;   // overrides agent.epsilon while training
  double restart_interval = 120.0;  // 0 disables restarts
  RestartPool restart_pool = RestartPool::kRandom;
};

struct ExperimentConfig {
  std::filesystem::path manifest;
  std::string initial_label = "S1";
  ParamVector initial = default_presets().at("S1");
  std::map<std::string, ParamVector> presets = default_presets();
  rl::AgentConfig agent;
  EstimatorSpec estimator;
  std::vector<EstimatorSpec> estimators;  // compare-rewards only
  double fps = 10.0;
  double duration = 120.0;
  double tuning_interval = 2.0;
  int window = 100;
  int actuation_latency_ms = 200;
  OracleThresholds thresholds;
  TrainingConfig train;
  std::filesystem::path output;
};

inline std::int64_t frame_count(const ExperimentConfig& cfg) {
  return std::llround(cfg.duration * cfg.fps);
}
inline std::int64_t frame_period_us(const ExperimentConfig& cfg) {
  return std::llround(1e6 / cfg.fps);
}
inline std::int64_t frames_per_tuning(const ExperimentConfig& cfg) {
  return std::max<std::int64_t>(1, std::llround(cfg.tuning_interval * cfg.fps));
}
inline std::int64_t tuning_interval_us(const ExperimentConfig& cfg) {
  return std::llround(cfg.tuning_interval * 1e6);
}

inline void validate(const ExperimentConfig& cfg) {
  if (!(cfg.fps > 0.0)) throw ConfigError("fps must be > 0");
  if (!(cfg.duration > 0.0)) throw ConfigError("duration must be > 0");
  if (!(cfg.tuning_interval >= 1.0 / cfg.fps)) {
    throw ConfigError("tuning interval must be at least one frame period");
  }
  if (cfg.window < 1) throw ConfigError("moving-average window must be >= 1");
  if (cfg.actuation_latency_ms < 0) throw ConfigError("actuation latency must be >= 0");
  if (cfg.train.steps < 0) throw ConfigError("training steps must be >= 0");
  if (!(cfg.train.restart_interval >= 0.0)) throw ConfigError("restart interval must be >= 0");
  if (cfg.train.epsilon && !(*cfg.train.epsilon >= 0.0 && *cfg.train.epsilon <= 1.0)) {
    throw ConfigError("training epsilon must lie in [0,1]");
  }
  rl::validate(cfg.agent);
  validate(cfg.thresholds);
  require_valid(cfg.initial, cfg.agent.step);
  for (const auto& [name, p] : cfg.presets) {
    if (!is_valid(p, cfg.agent.step)) throw ConfigError("preset " + name + " off the grid");
  }
}

namespace detail {

inline ParamVector param_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("parameter vector needs 4 integers");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

inline EstimatorSpec estimator_from_json(const nlohmann::json& j) {
  EstimatorSpec spec;
  const std::string type = j.value("type", std::string("composite"));
  spec.name = j.value("name", type);
  if (type == "composite") {
    CompositeEstimatorConfig c;
    if (j.contains("weights")) {
      const auto& w = j.at("weights");
      if (!w.is_array() || w.size() != 4) throw ConfigError("composite weights need 4 numbers");
      for (std::size_t i = 0; i < 4; ++i) c.weights[i] = w[i].get<double>();
    }
    if (j.contains("shape")) {
      const auto& s = j.at("shape");
      c.shape.brightness_peak = s.value("brightness_peak", c.shape.brightness_peak);
      c.shape.contrast_knee = s.value("contrast_knee", c.shape.contrast_knee);
      c.shape.colorfulness_knee = s.value("colorfulness_knee", c.shape.colorfulness_knee);
      c.shape.sharpness_knee = s.value("sharpness_knee", c.shape.sharpness_knee);
    }
    validate(c);
    spec.config = c;
  } else if (type == "external") {
    ExternalEstimatorConfig c;
    c.endpoint = j.at("endpoint").get<std::string>();
    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
    if (j.contains("range")) {
      const auto& r = j.at("range");
      if (!r.is_array() || r.size() != 2) throw ConfigError("estimator range needs [lo, hi]");
      c.lo = r[0].get<double>();
      c.hi = r[1].get<double>();
    }
    validate(c);
    spec.config = c;
  } else if (type == "constant") {
    ConstantEstimatorConfig c;
    c.value = j.value("value", c.value);
    if (!(c.value >= 0.0 && c.value <= 1.0)) throw ConfigError("constant score must lie in [0,1]");
    spec.config = c;
  } else {
    throw ConfigError("unknown estimator type '" + type + "'");
  }
  return spec;
}

}  // namespace detail

/// Builds an experiment config from JSON. Relative paths resolve against base_dir.
inline ExperimentConfig experiment_from_json(const nlohmann::json& j,
                                             const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    const auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return path.is_relative() ? base_dir / path : path;
    };
    cfg.manifest = resolve(j.at("manifest").get<std::string>());
    if (j.contains("output")) cfg.output = resolve(j.at("output").get<std::string>());
    if (j.contains("presets")) {
      for (const auto& [name, v] : j.at("presets").items()) {
        cfg.presets[name] = detail::param_vector_from_json(v);
      }
    }
    if (j.contains("initial")) {
      const auto& init = j.at("initial");
      if (init.is_string()) {
        cfg.initial_label = init.get<std::string>();
        const auto it = cfg.presets.find(cfg.initial_label);
        if (it == cfg.presets.end()) throw ConfigError("unknown preset " + cfg.initial_label);
        cfg.initial = it->second;
      } else {
        cfg.initial = detail::param_vector_from_json(init);
        cfg.initial_label = "custom";
      }
    }
    if (j.contains("agent")) cfg.agent = rl::config_from_json(j.at("agent"));
    if (j.contains("estimator")) cfg.estimator = detail::estimator_from_json(j.at("estimator"));
    if (j.contains("estimators")) {
      for (const auto& e : j.at("estimators")) {
        cfg.estimators.push_back(detail::estimator_from_json(e));
      }
    }
    cfg.fps = j.value("fps", cfg.fps);
    cfg.duration = j.value("duration", cfg.duration);
    cfg.tuning_interval = j.value("tuning_interval", cfg.tuning_interval);
    cfg.window = j.value("window", cfg.window);
    cfg.actuation_latency_ms = j.value("actuation_latency_ms", cfg.actuation_latency_ms);
    if (j.contains("thresholds")) {
      const auto& t = j.at("thresholds");
      cfg.thresholds.min_contrast = t.value("min_contrast", cfg.thresholds.min_contrast);
      cfg.thresholds.min_sharpness = t.value("min_sharpness", cfg.thresholds.min_sharpness);
      if (t.contains("luma_window")) {
        const auto& w = t.at("luma_window");
        if (!w.is_array() || w.size() != 2) throw ConfigError("luma_window needs [lo, hi]");
        cfg.thresholds.luma_lo = w[0].get<double>();
        cfg.thresholds.luma_hi = w[1].get<double>();
      }
    }
    if (j.contains("train")) {
      const auto& t = j.at("train");
      cfg.train.steps = t.value("steps", cfg.train.steps);
      if (t.contains("epsilon")) cfg.train.epsilon = t.at("epsilon").get<double>();
      cfg.train.restart_interval = t.value("restart_interval", cfg.train.restart_interval);
      const std::string pool = t.value("restart_from", std::string("random"));
      if (pool == "random") {
        cfg.train.restart_pool = RestartPool::kRandom;
      } else if (pool == "presets") {
        cfg.train.restart_pool = RestartPool::kPresets;
      } else {
        throw ConfigError("restart_from must be 'random' or 'presets'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

inline ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config " + path.string() + ": " + e.what());
  }
  return experiment_from_json(j, path.parent_path());
}

}  // namespace camtune::harness
