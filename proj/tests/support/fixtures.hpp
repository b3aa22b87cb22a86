#pragma once

#include <filesystem>
#include <memory>
#include <random>

#include "camtune/camtune.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(CAMTUNE_FIXTURE_DIR) / name;
}

inline std::shared_ptr<const camtune::SceneManifest> fixture_scene() {
  static const auto scene =
      std::make_shared<const camtune::SceneManifest>(camtune::load_manifest(fixture("scene.json")));
  return scene;
}

inline camtune::Frame random_frame(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> byte(0, 255);
  camtune::Frame f(w, h);
  for (auto& p : f.pixels()) {
    p = {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
         static_cast<std::uint8_t>(byte(rng))};
  }
  return f;
}

inline camtune::Frame uniform_frame(int w, int h, camtune::Rgb c) { return camtune::Frame(w, h, c); }

/// Left half black, right half white (columns split at w/2).
inline camtune::Frame half_black_white(int w, int h) {
  camtune::Frame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = w / 2; x < w; ++x) f.at(x, y) = {255, 255, 255};
  return f;
}

inline std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "camtune_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace testing_support
