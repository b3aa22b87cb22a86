#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "camtune/camera/camera.hpp"
#include "camtune/imaging/metrics.hpp"
#include "camtune/imaging/params.hpp"
#include "camtune/reward/estimator.hpp"
#include "camtune/rl/learning.hpp"
#include "camtune/rl/qtable.hpp"
#include "camtune/rng.hpp"

namespace camtune::rl {

/// Discretised <parameters, measurements> pair.
struct StateKey {
  std::array<int, 4> param_indices{};  // value / step
  std::array<int, 4> metric_bins{};    // floor(m * bins), capped at bins - 1

  friend auto operator<=>(const StateKey&, const StateKey&) = default;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

/// Nine moves: +/- step on one of the four parameters, or leave everything.
enum class ActionId : std::uint8_t {
  kBrightnessUp = 0,
  kBrightnessDown = 1,
  kContrastUp = 2,
  kContrastDown = 3,
  kColorUp = 4,
  kColorDown = 5,
  kSharpnessUp = 6,
  kSharpnessDown = 7,
  kNoOp = 8,
};

inline constexpr std::size_t kNumActions = 9;

constexpr std::string_view action_name(ActionId a) noexcept {
  constexpr std::array<std::string_view, kNumActions> names = {
      "brightness+", "brightness-", "contrast+", "contrast-", "color+",
      "color-",      "sharpness+",  "sharpness-", "noop"};
  return names[static_cast<std::size_t>(a)];
}

using CameraQTable = QTable<StateKey, kNumActions>;

enum class UpdateRule { kSarsa, kQLearning };

struct AgentConfig {
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.9;  // exploration when u > epsilon, i.e. about 10% here
  int step = kDefaultParamStep;
  int metric_bins = 10;
  std::uint64_t seed = 1;
  UpdateRule rule = UpdateRule::kSarsa;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

inline void validate(const AgentConfig& cfg) {
  const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(cfg.alpha)) throw ConfigError("alpha must lie in [0,1]");
  if (!unit(cfg.gamma)) throw ConfigError("gamma must lie in [0,1]");
  if (!unit(cfg.epsilon)) throw ConfigError("epsilon must lie in [0,1]");
  if (!is_valid_step(cfg.step)) throw ConfigError("step must divide 100");
  if (cfg.metric_bins < 1) throw ConfigError("metric_bins must be >= 1");
}

inline StateKey discretize(const ParamVector& p, const MetricVector& m, const AgentConfig& cfg) {
  StateKey key;
  for (std::size_t i = 0; i < 4; ++i) key.param_indices[i] = p.values[i] / cfg.step;
  const std::array<double, 4> metrics{m.brightness, m.contrast, m.colorfulness, m.sharpness};
  for (std::size_t i = 0; i < 4; ++i) {
    const int bin = static_cast<int>(std::floor(metrics[i] * cfg.metric_bins));
    key.metric_bins[i] = std::clamp(bin, 0, cfg.metric_bins - 1);
  }
  return key;
}

/// The parameter an action touches, or nullopt for the no-op.
constexpr std::optional<Param> action_param(ActionId a) noexcept {
  if (a == ActionId::kNoOp) return std::nullopt;
  return static_cast<Param>(static_cast<int>(a) / 2);
}

inline ParamVector apply_action(const ParamVector& p, ActionId a, int step) {
  ParamVector out = p;
  const auto param = action_param(a);
  if (!param) return out;
  const int delta = static_cast<int>(a) % 2 == 0 ? step : -step;
  out[*param] = std::clamp(out[*param] + delta, kParamMin, kParamMax);
  return out;
}

/// Learner state owned by one tuning loop.
struct TuningAgent {
  AgentConfig config;
  CameraQTable table;
  Rng rng;
  // (s, a) awaiting its reward; empty at the start of an episode.
  std::optional<std::pair<StateKey, ActionId>> pending;

  explicit TuningAgent(AgentConfig cfg, CameraQTable q = {})
      : config(cfg), table(std::move(q)), rng(cfg.seed) {
    validate(config);
  }

  /// Forget the in-flight (s, a), e.g. after the camera was moved externally.
  void end_episode() noexcept { pending.reset(); }
};

struct StepLog {
  double t = 0.0;
  ParamVector params_before;
  MetricVector metrics;
  double reward = 0.0;
  ActionId action = ActionId::kNoOp;  // the action selected at this step (a')
  double q_delta = 0.0;               // change applied to Q(s,a); 0 when bootstrapping
  bool actuated = false;              // a parameter was actually changed
  bool skipped = false;               // transport/protocol failure; nothing committed
  std::string error;

  friend bool operator==(const StepLog&, const StepLog&) = default;
};

/// One pass of the control loop on an already captured frame: score, measure,
/// discretise, pick a', update Q(s,a) toward r + gamma Q(s',a'), actuate a'.
/// Nothing is committed to the agent unless actuation succeeds; failures of
/// the camera or estimator transport come back as a skipped log.
inline StepLog tuning_step_on_frame(TuningAgent& agent, CameraBackend& camera,
                                    const QualityEstimator& estimator, double t,
                                    const Frame& frame) {
  StepLog log;
  log.t = t;
  try {
    const AgentConfig& cfg = agent.config;
    log.metrics = measure_all(frame);
    log.reward = estimator.score_measured(frame, log.metrics);
    log.params_before = camera.get_params();
    const StateKey next_state = discretize(log.params_before, log.metrics, cfg);

    Rng rng = agent.rng;
    const auto next_action =
        static_cast<ActionId>(select_action(agent.table, next_state, cfg.epsilon, rng));
    log.action = next_action;

    const ParamVector target = apply_action(log.params_before, next_action, cfg.step);
    if (const auto param = action_param(next_action); param && target != log.params_before) {
      camera.set_param(*param, target[*param]);
      log.actuated = true;
    }

    if (agent.pending) {
      const auto& [s, a] = *agent.pending;
      const double before = agent.table.get(s, static_cast<std::size_t>(a));
      const double after =
          cfg.rule == UpdateRule::kSarsa
              ? sarsa_update(agent.table, s, static_cast<std::size_t>(a), log.reward, next_state,
                             static_cast<std::size_t>(next_action), cfg.alpha, cfg.gamma)
              : q_learning_update(agent.table, s, static_cast<std::size_t>(a), log.reward,
                                  next_state, cfg.alpha, cfg.gamma);
      log.q_delta = after - before;
    }
    agent.pending = {next_state, next_action};
    agent.rng = rng;
  } catch (const TransportError& e) {
    log.skipped = true;
    log.error = e.what();
  } catch (const ProtocolError& e) {
    log.skipped = true;
    log.error = e.what();
  } catch (const DecodeError& e) {
    log.skipped = true;
    log.error = e.what();
  }
  return log;
}

/// Captures at t, then runs tuning_step_on_frame.
inline StepLog tuning_step(TuningAgent& agent, CameraBackend& camera,
                           const QualityEstimator& estimator, double t) {
  StepLog skipped;
  skipped.t = t;
  skipped.skipped = true;
  try {
    const Frame frame = camera.capture(t);
    return tuning_step_on_frame(agent, camera, estimator, t, frame);
  } catch (const TransportError& e) {
    skipped.error = e.what();
  } catch (const DecodeError& e) {
    skipped.error = e.what();
  }
  return skipped;
}

}  // namespace camtune::rl
