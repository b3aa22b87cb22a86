#pragma once

// Experiment protocols: side-by-side fixed vs tuned runs, offline training,
// and the reward-function comparison table.

#include <algorithm>
#include <future>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "camtune/analytics/detect.hpp"
#include "camtune/camera/camera.hpp"
#include "camtune/harness/config.hpp"
#include "camtune/harness/csv.hpp"
#include "camtune/rl/agent.hpp"

namespace camtune::harness {

inline constexpr const char* kFixedCamera = "fixed";
inline constexpr const char* kTunedCamera = "tuned";

struct FrameRow {
  double t = 0.0;
  std::string camera;
  ParamVector params;
  MetricVector metrics;
  std::optional<double> reward;  // only on frames that drove a tuning step
  int detections = 0;
  double moving_average = 0.0;

  friend bool operator==(const FrameRow&, const FrameRow&) = default;
};

struct RunLog {
  std::string camera;
  std::vector<FrameRow> rows;
  std::vector<rl::StepLog> steps;
};

struct CompareSummary {
  long long detections_fixed = 0;
  long long detections_tuned = 0;
  double improvement_pct = 0.0;
  double steady_state_tuned = 0.0;  // mean detections over the final 25% of frames
  double steady_state_fixed = 0.0;
};

struct CompareResult {
  RunLog fixed;
  RunLog tuned;
  CompareSummary summary;
  rl::CameraQTable table;  // after online learning during the run
};

/// Mean of the last `window` values ending at each index.
inline std::vector<double> moving_average(std::span<const int> values, int window) {
  std::vector<double> out(values.size());
  long long sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i >= static_cast<std::size_t>(window)) sum -= values[i - static_cast<std::size_t>(window)];
    const auto n = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out[i] = static_cast<double>(sum) / static_cast<double>(n);
  }
  return out;
}

inline double improvement_percent(long long tuned, long long fixed) {
  return static_cast<double>(tuned - fixed) / static_cast<double>(std::max(fixed, 1LL)) * 100.0;
}

/// First row index of the steady-state tail (final 25% of frames).
inline std::size_t steady_state_begin(std::size_t n) { return n - std::max<std::size_t>(1, n / 4); }

inline double steady_state_mean(const std::vector<FrameRow>& rows) {
  if (rows.empty()) return 0.0;
  const std::size_t begin = steady_state_begin(rows.size());
  double sum = 0.0;
  for (std::size_t i = begin; i < rows.size(); ++i) sum += rows[i].detections;
  return sum / static_cast<double>(rows.size() - begin);
}

inline CompareSummary summarize(const RunLog& fixed, const RunLog& tuned) {
  CompareSummary s;
  for (const auto& r : fixed.rows) s.detections_fixed += r.detections;
  for (const auto& r : tuned.rows) s.detections_tuned += r.detections;
  s.improvement_pct = improvement_percent(s.detections_tuned, s.detections_fixed);
  s.steady_state_tuned = steady_state_mean(tuned.rows);
  s.steady_state_fixed = steady_state_mean(fixed.rows);
  return s;
}

namespace detail {

inline void fill_moving_average(RunLog& log, int window) {
  std::vector<int> counts;
  counts.reserve(log.rows.size());
  for (const auto& r : log.rows) counts.push_back(r.detections);
  const auto ma = moving_average(counts, window);
  for (std::size_t i = 0; i < log.rows.size(); ++i) log.rows[i].moving_average = ma[i];
}

// Streams frames from one simulated camera; when agent is set, every
// frames_per_tuning-th frame also drives a tuning step.
inline RunLog stream_camera(const ExperimentConfig& cfg, const SceneManifest& scene,
                            SimulatedCamera& camera, const std::string& name,
                            rl::TuningAgent* agent, const QualityEstimator* estimator) {
  RunLog log;
  log.camera = name;
  const std::int64_t n = frame_count(cfg);
  const std::int64_t tune_every = frames_per_tuning(cfg);
  log.rows.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double t = camera.clock().seconds();
    FrameRow row;
    row.t = t;
    row.camera = name;
    row.params = camera.get_params();
    const Frame frame = camera.capture(t);
    row.metrics = measure_all(frame);
    row.detections = detect_targets(frame, scene.targets, cfg.thresholds).count;
    if (agent && i % tune_every == 0) {
      const rl::StepLog step = rl::tuning_step_on_frame(*agent, camera, *estimator, t, frame);
      if (!step.skipped) row.reward = step.reward;
      log.steps.push_back(step);
    }
    log.rows.push_back(std::move(row));
    camera.clock().advance_us(frame_period_us(cfg));
  }
  fill_moving_average(log, cfg.window);
  return log;
}

}  // namespace detail

/// Two simulated cameras on the same scene start from cfg.initial. The fixed
/// one never moves; the tuned one is driven by the agent (continuing to learn
/// from `table`) every tuning interval. Both are scored on every frame.
inline CompareResult run_compare(const ExperimentConfig& cfg,
                                 std::shared_ptr<const SceneManifest> scene,
                                 const QualityEstimator& estimator, rl::CameraQTable table = {}) {
  validate(cfg);
  SimulatedCamera fixed_cam(scene, cfg.initial, cfg.agent.step, cfg.actuation_latency_ms);
  SimulatedCamera tuned_cam(scene, cfg.initial, cfg.agent.step, cfg.actuation_latency_ms);
  rl::TuningAgent agent(cfg.agent, std::move(table));

  auto fixed_future = std::async(std::launch::async, [&] {
    return detail::stream_camera(cfg, *scene, fixed_cam, kFixedCamera, nullptr, nullptr);
  });
  CompareResult result;
  result.tuned = detail::stream_camera(cfg, *scene, tuned_cam, kTunedCamera, &agent, &estimator);
  result.fixed = fixed_future.get();
  result.summary = summarize(result.fixed, result.tuned);
  result.table = std::move(agent.table);
  return result;
}

struct TrainResult {
  rl::CameraQTable table;
  std::int64_t steps = 0;
  std::int64_t skipped = 0;
  std::int64_t restarts = 0;
  double end_time = 0.0;
};

/// Runs cfg.train.steps tuning steps on a simulated camera that starts at
/// cfg.initial. Simulated time advances by the tuning interval per step plus
/// actuation latency.
inline TrainResult run_train(const ExperimentConfig& cfg, std::shared_ptr<const SceneManifest> scene,
                             const QualityEstimator& estimator, rl::CameraQTable table = {}) {
  validate(cfg);
  SimulatedCamera camera(scene, cfg.initial, cfg.agent.step, cfg.actuation_latency_ms);
  rl::AgentConfig agent_cfg = cfg.agent;
  if (cfg.train.epsilon) agent_cfg.epsilon = *cfg.train.epsilon;
  rl::TuningAgent agent(agent_cfg, std::move(table));

  Rng disturbance(mix_seed(cfg.agent.seed, 0x7261696eULL));
  const int levels = kParamMax / cfg.agent.step + 1;
  const std::int64_t restart_us = std::llround(cfg.train.restart_interval * 1e6);
  std::int64_t next_restart = restart_us;

  TrainResult result;
  for (std::int64_t i = 0; i < cfg.train.steps; ++i) {
    if (restart_us > 0 && camera.clock().micros() >= next_restart) {
      ParamVector p;
      if (cfg.train.restart_pool == RestartPool::kPresets && !cfg.presets.empty()) {
        auto it = cfg.presets.begin();
        std::advance(it, result.restarts % static_cast<std::int64_t>(cfg.presets.size()));
        p = it->second;
      } else {
        for (int& v : p.values) {
          v = static_cast<int>(disturbance.uniform_index(levels)) * cfg.agent.step;
        }
      }
      camera.reset_params(p);
      agent.end_episode();
      ++result.restarts;
      while (next_restart <= camera.clock().micros()) next_restart += restart_us;
    }
    const rl::StepLog step = rl::tuning_step(agent, camera, estimator, camera.clock().seconds());
    result.skipped += step.skipped ? 1 : 0;
    camera.clock().advance_us(tuning_interval_us(cfg));
  }
  result.steps = cfg.train.steps;
  result.end_time = camera.clock().seconds();
  result.table = std::move(agent.table);
  return result;
}

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "t",         "camera",       "brightness",     "contrast",
      "color",     "sharpness",    "m_brightness",   "m_contrast",
      "m_colorfulness", "m_sharpness", "reward", "detections", "ma"};
  return cols;
}

/// Both cameras' rows merged in time order (fixed first on equal t).
inline void write_compare_csv(std::ostream& out, const CompareResult& result) {
  write_csv_row(out, csv_columns());
  std::vector<const FrameRow*> rows;
  for (const auto& r : result.fixed.rows) rows.push_back(&r);
  for (const auto& r : result.tuned.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FrameRow* a, const FrameRow* b) { return a->t < b->t; });
  for (const FrameRow* r : rows) {
    const std::vector<std::string> fields = {
        format_number(r->t),
        r->camera,
        std::to_string(r->params.brightness()),
        std::to_string(r->params.contrast()),
        std::to_string(r->params.color()),
        std::to_string(r->params.sharpness()),
        format_number(r->metrics.brightness),
        format_number(r->metrics.contrast),
        format_number(r->metrics.colorfulness),
        format_number(r->metrics.sharpness),
        r->reward ? format_number(*r->reward) : std::string(),
        std::to_string(r->detections),
        format_number(r->moving_average)};
    write_csv_row(out, fields);
  }
}

struct RewardComparisonRow {
  std::string estimator;
  double mean_improvement_pct = 0.0;
  double mean_steady_state = 0.0;
  std::vector<std::pair<std::string, CompareSummary>> per_preset;

  friend bool operator==(const RewardComparisonRow& a, const RewardComparisonRow& b) {
    return a.estimator == b.estimator && a.mean_improvement_pct == b.mean_improvement_pct &&
           a.mean_steady_state == b.mean_steady_state;
  }
};

/// For each estimator: train a fresh table, then compare from every preset.
inline std::vector<RewardComparisonRow> run_reward_comparison(
    const ExperimentConfig& cfg, std::shared_ptr<const SceneManifest> scene,
    const std::vector<EstimatorSpec>& estimators) {
  if (estimators.size() < 2) throw ConfigError("reward comparison needs at least two estimators");
  if (cfg.presets.empty()) throw ConfigError("reward comparison needs at least one preset");
  std::vector<RewardComparisonRow> rows;
  for (const EstimatorSpec& spec : estimators) {
    const auto estimator = make_estimator(spec);
    const TrainResult trained = run_train(cfg, scene, *estimator);
    RewardComparisonRow row;
    row.estimator = spec.name;
    for (const auto& [label, preset] : cfg.presets) {
      ExperimentConfig run_cfg = cfg;
      run_cfg.initial = preset;
      run_cfg.initial_label = label;
      const CompareResult cmp = run_compare(run_cfg, scene, *estimator, trained.table);
      row.per_preset.emplace_back(label, cmp.summary);
      row.mean_improvement_pct += cmp.summary.improvement_pct;
      row.mean_steady_state += cmp.summary.steady_state_tuned;
    }
    const auto n = static_cast<double>(row.per_preset.size());
    row.mean_improvement_pct /= n;
    row.mean_steady_state /= n;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_reward_comparison_csv(std::ostream& out,
                                        const std::vector<RewardComparisonRow>& rows) {
  const std::vector<std::string> header = {"estimator", "improvement_pct", "steady_state_detections"};
  write_csv_row(out, header);
  for (const auto& r : rows) {
    const std::vector<std::string> fields = {r.estimator, format_number(r.mean_improvement_pct),
                                             format_number(r.mean_steady_state)};
    write_csv_row(out, fields);
  }
}

}  // namespace camtune::harness
