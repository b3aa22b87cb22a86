#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "camtune/error.hpp"
#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/image_io.hpp"
#include "camtune/rng.hpp"

namespace camtune {

/// Annotated object in the base image.
struct TargetBox {
  std::string label;
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const TargetBox&, const TargetBox&) = default;
};

inline constexpr int kMinTargetSide = 8;

/// Environmental state applied to the latent scene.
struct EnvCondition {
  double illumination = 1.0;  // multiplier >= 0
  double noise_sigma = 0.0;   // gaussian sigma in 8-bit units
  double haze_alpha = 0.0;    // blend weight toward mid grey, [0,1]

  friend bool operator==(const EnvCondition&, const EnvCondition&) = default;
};

inline constexpr EnvCondition kDay{1.0, 0.0, 0.0};
inline constexpr EnvCondition kNight{0.25, 8.0, 0.0};

struct Keyframe {
  double t = 0.0;
  EnvCondition condition;

  friend bool operator==(const Keyframe&, const Keyframe&) = default;
};

/// Step-interpolated condition timeline; first keyframe at t = 0.
struct ConditionSchedule {
  std::vector<Keyframe> keyframes{{0.0, kDay}};
};

struct SceneManifest {
  std::filesystem::path base_image;  // resolved against the manifest's directory
  Frame base{1, 1};
  std::vector<TargetBox> targets;
  ConditionSchedule schedule;
  std::uint64_t seed = 0;
};

inline void validate(const EnvCondition& c) {
  if (!(c.illumination >= 0.0) || !std::isfinite(c.illumination)) {
    throw ValidationError("illumination must be a finite value >= 0");
  }
  if (!(c.noise_sigma >= 0.0) || !std::isfinite(c.noise_sigma)) {
    throw ValidationError("noise_sigma must be a finite value >= 0");
  }
  if (!(c.haze_alpha >= 0.0 && c.haze_alpha <= 1.0)) {
    throw ValidationError("haze_alpha must lie in [0,1]");
  }
}

inline void validate(const ConditionSchedule& s) {
  if (s.keyframes.empty()) throw ValidationError("schedule needs at least one keyframe");
  if (s.keyframes.front().t != 0.0) throw ValidationError("first keyframe must be at t = 0");
  for (std::size_t i = 0; i < s.keyframes.size(); ++i) {
    validate(s.keyframes[i].condition);
    if (i > 0 && !(s.keyframes[i].t > s.keyframes[i - 1].t)) {
      throw ValidationError("keyframe times must be strictly increasing");
    }
  }
}

inline void validate(const TargetBox& box, int width, int height) {
  if (box.w < kMinTargetSide || box.h < kMinTargetSide) {
    throw ValidationError("target '" + box.label + "' smaller than 8x8");
  }
  if (box.x < 0 || box.y < 0 || box.x + box.w > width || box.y + box.h > height) {
    throw ValidationError("target '" + box.label + "' extends outside the base image");
  }
}

/// Condition of the latest keyframe at or before t.
inline EnvCondition condition_at(const ConditionSchedule& schedule, double t) {
  const Keyframe* current = &schedule.keyframes.front();
  for (const Keyframe& k : schedule.keyframes) {
    if (k.t > t) break;
    current = &k;
  }
  return current->condition;
}

/// Latent frame: clamp(base * illumination + noise), then hazed toward (128,128,128).
/// Noise is seeded from (seed, t in microseconds), so equal calls give equal frames.
inline Frame apply_condition(const Frame& base, const EnvCondition& c, double t,
                             std::uint64_t seed) {
  Frame out = base;
  if (c == kDay) return out;
  const bool noisy = c.noise_sigma > 0.0;
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(std::llround(t * 1e6))));
  const auto channel = [&](std::uint8_t v) {
    double x = static_cast<double>(v) * c.illumination;
    if (noisy) x += c.noise_sigma * rng.normal();
    x = std::clamp(x, 0.0, 255.0);
    return to_u8((1.0 - c.haze_alpha) * x + c.haze_alpha * 128.0);
  };
  if (!noisy) {
    std::array<std::uint8_t, 256> table{};
    for (int v = 0; v < 256; ++v) table[v] = channel(static_cast<std::uint8_t>(v));
    for (Rgb& p : out.pixels()) p = {table[p.r], table[p.g], table[p.b]};
    return out;
  }
  for (Rgb& p : out.pixels()) {
    const std::uint8_t r = channel(p.r);
    const std::uint8_t g = channel(p.g);
    const std::uint8_t b = channel(p.b);
    p = {r, g, b};
  }
  return out;
}

namespace detail {

template <typename T>
T json_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("manifest: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("manifest: bad field '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Parses and validates a manifest document. Relative image paths resolve
/// against base_dir.
inline SceneManifest parse_manifest(const nlohmann::json& j,
                                    const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ValidationError("manifest: top level must be an object");
  SceneManifest m;
  m.base_image = detail::json_field<std::string>(j, "base_image");
  if (m.base_image.is_relative()) m.base_image = base_dir / m.base_image;
  m.seed = detail::json_field<std::uint64_t>(j, "seed");

  for (const auto& t : detail::json_field<nlohmann::json>(j, "targets")) {
    m.targets.push_back({detail::json_field<std::string>(t, "label"),
                         detail::json_field<int>(t, "x"), detail::json_field<int>(t, "y"),
                         detail::json_field<int>(t, "w"), detail::json_field<int>(t, "h")});
  }
  m.schedule.keyframes.clear();
  for (const auto& k : detail::json_field<nlohmann::json>(j, "schedule")) {
    m.schedule.keyframes.push_back(
        {detail::json_field<double>(k, "t"),
         {detail::json_field<double>(k, "illumination"), detail::json_field<double>(k, "noise_sigma"),
          detail::json_field<double>(k, "haze_alpha")}});
  }
  validate(m.schedule);

  try {
    m.base = load_image(m.base_image);
  } catch (const Error& e) {
    throw ValidationError(std::string("manifest: base image not loadable: ") + e.what());
  }
  for (const TargetBox& box : m.targets) validate(box, m.base.width(), m.base.height());
  return m;
}

inline SceneManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("manifest " + path.string() + ": " + e.what());
  }
  return parse_manifest(j, path.parent_path());
}

}  // namespace camtune
