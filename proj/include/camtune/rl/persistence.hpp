#pragma once

// Versioned JSON form of a camera Q-table:
//   {"version": 1, "config": {...}, "entries": [{"s": [8 ints], "a": int, "q": number}]}
// Doubles are written in shortest round-trip form, so load(save(q)) == q bit for bit.

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "camtune/rl/agent.hpp"

namespace camtune::rl {

inline constexpr int kQTableVersion = 1;

inline nlohmann::json config_to_json(const AgentConfig& cfg) {
  return {{"alpha", cfg.alpha},
          {"gamma", cfg.gamma},
          {"epsilon", cfg.epsilon},
          {"step", cfg.step},
          {"metric_bins", cfg.metric_bins},
          {"seed", cfg.seed},
          {"update", cfg.rule == UpdateRule::kSarsa ? "sarsa" : "q_learning"}};
}

/// Reads an agent config; absent keys keep their defaults.
inline AgentConfig config_from_json(const nlohmann::json& j) {
  AgentConfig cfg;
  if (!j.is_object()) throw ConfigError("agent config must be an object");
  try {
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.gamma = j.value("gamma", cfg.gamma);
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    cfg.step = j.value("step", cfg.step);
    cfg.metric_bins = j.value("metric_bins", cfg.metric_bins);
    cfg.seed = j.value("seed", cfg.seed);
    const std::string rule = j.value("update", std::string("sarsa"));
    if (rule == "sarsa") {
      cfg.rule = UpdateRule::kSarsa;
    } else if (rule == "q_learning") {
      cfg.rule = UpdateRule::kQLearning;
    } else {
      throw ConfigError("unknown update rule '" + rule + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("agent config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

inline nlohmann::json qtable_to_json(const CameraQTable& q, const AgentConfig& cfg) {
  nlohmann::json entries = nlohmann::json::array();
  q.for_each([&](const StateKey& s, std::size_t a, double value) {
    nlohmann::json key = nlohmann::json::array();
    for (int v : s.param_indices) key.push_back(v);
    for (int v : s.metric_bins) key.push_back(v);
    entries.push_back({{"s", std::move(key)}, {"a", a}, {"q", value}});
  });
  return {{"version", kQTableVersion}, {"config", config_to_json(cfg)}, {"entries", entries}};
}

struct LoadedQTable {
  CameraQTable table;
  AgentConfig config;
};

inline LoadedQTable qtable_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("version")) throw ParseError("q-table: missing version");
  if (!j["version"].is_number_integer()) throw ParseError("q-table: version must be an integer");
  if (j["version"].get<int>() != kQTableVersion) {
    throw VersionMismatch("q-table version " + j["version"].dump() + ", expected " +
                          std::to_string(kQTableVersion));
  }
  LoadedQTable out;
  try {
    out.config = config_from_json(j.at("config"));
    for (const auto& e : j.at("entries")) {
      const auto& key = e.at("s");
      if (!key.is_array() || key.size() != 8) throw ParseError("q-table: state needs 8 ints");
      StateKey s;
      for (std::size_t i = 0; i < 4; ++i) {
        s.param_indices[i] = key[i].get<int>();
        s.metric_bins[i] = key[i + 4].get<int>();
      }
      const auto a = e.at("a").get<std::size_t>();
      if (a >= kNumActions) throw ParseError("q-table: action id out of range");
      out.table.set(s, a, e.at("q").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("q-table: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("q-table: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("q-table: ") + e.what());
  }
  return out;
}

inline void save_qtable(const CameraQTable& q, const AgentConfig& cfg,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write q-table " + path.string());
  out << qtable_to_json(q, cfg).dump(1) << '\n';
  if (!out) throw IoError("short write to " + path.string());
}

inline LoadedQTable load_qtable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open q-table " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("q-table " + path.string() + ": " + e.what());
  }
  return qtable_from_json(j);
}

}  // namespace camtune::rl
