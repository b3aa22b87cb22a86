// camtune: train, compare and inspect the parameter tuner on simulated scenes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "camtune/camtune.hpp"

namespace {

using namespace camtune;
using namespace camtune::harness;

std::shared_ptr<const SceneManifest> load_scene(const ExperimentConfig& cfg) {
  return std::make_shared<const SceneManifest>(load_manifest(cfg.manifest));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

nlohmann::json summary_json(const CompareSummary& s) {
  return {{"detections_fixed", s.detections_fixed},
          {"detections_tuned", s.detections_tuned},
          {"improvement_pct", s.improvement_pct},
          {"steady_state_fixed", s.steady_state_fixed},
          {"steady_state_tuned", s.steady_state_tuned}};
}

int cmd_train(const std::string& config_path, const std::string& out_path) {
  const ExperimentConfig cfg = load_experiment(config_path);
  const auto scene = load_scene(cfg);
  const auto estimator = make_estimator(cfg.estimator);
  const TrainResult r = run_train(cfg, scene, *estimator);
  rl::save_qtable(r.table, cfg.agent, out_path);
  const nlohmann::json report = {{"steps", r.steps},
                                 {"skipped", r.skipped},
                                 {"restarts", r.restarts},
                                 {"entries", r.table.size()},
                                 {"simulated_seconds", r.end_time}};
  std::cout << report.dump() << '\n';
  return 0;
}

int cmd_compare(const std::string& config_path, const std::string& qtable_path,
                const std::string& out_path) {
  const ExperimentConfig cfg = load_experiment(config_path);
  const auto scene = load_scene(cfg);
  const auto estimator = make_estimator(cfg.estimator);
  rl::CameraQTable table;
  if (!qtable_path.empty()) {
    rl::LoadedQTable loaded = rl::load_qtable(qtable_path);
    if (loaded.config.step != cfg.agent.step ||
        loaded.config.metric_bins != cfg.agent.metric_bins) {
      throw ConfigError("q-table was trained with a different step or bin count");
    }
    table = std::move(loaded.table);
  }
  const CompareResult r = run_compare(cfg, scene, *estimator, std::move(table));
  auto out = open_output(out_path);
  write_compare_csv(out, r);
  nlohmann::json report = summary_json(r.summary);
  report["initial"] = cfg.initial_label;
  std::cout << report.dump() << '\n';
  return 0;
}

int cmd_compare_rewards(const std::string& config_path, const std::string& out_path) {
  const ExperimentConfig cfg = load_experiment(config_path);
  const auto scene = load_scene(cfg);
  const auto rows = run_reward_comparison(cfg, scene, cfg.estimators);
  auto out = open_output(out_path);
  write_reward_comparison_csv(out, rows);
  nlohmann::json report = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json presets;
    for (const auto& [label, s] : row.per_preset) presets[label] = summary_json(s);
    report.push_back({{"estimator", row.estimator},
                      {"improvement_pct", row.mean_improvement_pct},
                      {"steady_state_detections", row.mean_steady_state},
                      {"presets", presets}});
  }
  std::cout << report.dump() << '\n';
  return 0;
}

int cmd_measure(const std::string& image_path) {
  const Frame frame = load_image(image_path);
  const MetricVector m = measure_all(frame);
  const nlohmann::json report = {{"brightness", m.brightness},
                                 {"contrast", m.contrast},
                                 {"colorfulness", m.colorfulness},
                                 {"sharpness", m.sharpness},
                                 {"composite", score_metrics(m, {})}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive camera parameter tuning on simulated scenes"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string qtable;
  std::string image;

  auto* train = app.add_subcommand("train", "Train a Q-table offline and save it");
  train->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  train->add_option("--out", out, "Q-table output path")->required();

  auto* compare = app.add_subcommand("compare", "Run fixed vs tuned cameras side by side");
  compare->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  compare->add_option("--qtable", qtable, "Pre-trained Q-table")->check(CLI::ExistingFile);
  compare->add_option("--out", out, "Per-frame CSV output path")->required();

  auto* rewards = app.add_subcommand("compare-rewards", "Train and compare each configured estimator");
  rewards->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  rewards->add_option("--out", out, "Comparison CSV output path")->required();

  auto* measure = app.add_subcommand("measure", "Print image metrics and composite score");
  measure->add_option("--image", image, "PNG, JPEG or PPM image")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(config, out);
    if (*compare) return cmd_compare(config, qtable, out);
    if (*rewards) return cmd_compare_rewards(config, out);
    if (*measure) return cmd_measure(image);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
