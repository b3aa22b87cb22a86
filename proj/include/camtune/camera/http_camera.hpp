#pragma once

// Network camera driven by templated GET requests.

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>

#include "camtune/camera/camera.hpp"
#include "camtune/imaging/image_io.hpp"
#include "camtune/net/http.hpp"

namespace camtune {

inline constexpr std::string_view kValuePlaceholder = "{value}";

struct HttpCameraConfig {
  // One template per parameter, indexed by Param; each holds one {value}.
  std::array<std::string, 4> set_url_templates;
  // Returns "key=value" lines; the last dotted component of key names the parameter.
  std::string get_url;
  // Returns an image/png or image/jpeg body.
  std::string capture_url;
  std::array<std::string, 4> param_keys{"Brightness", "Contrast", "ColorLevel", "Sharpness"};
  int timeout_ms = 2000;
  int step = kDefaultParamStep;
};

inline std::size_t count_placeholders(std::string_view s) {
  std::size_t n = 0;
  for (auto pos = s.find(kValuePlaceholder); pos != std::string_view::npos;
       pos = s.find(kValuePlaceholder, pos + kValuePlaceholder.size())) {
    ++n;
  }
  return n;
}

inline void validate(const HttpCameraConfig& cfg) {
  for (Param p : kAllParams) {
    if (count_placeholders(cfg.set_url_templates[static_cast<std::size_t>(p)]) != 1) {
      throw ConfigError("set url template for " + std::string(param_name(p)) +
                        " must contain exactly one {value}");
    }
  }
  if (cfg.timeout_ms <= 0) throw ConfigError("http camera timeout must be > 0");
  if (!is_valid_step(cfg.step)) throw ConfigError("parameter step must divide 100");
  net::split_url(cfg.get_url);
  net::split_url(cfg.capture_url);
}

inline std::string fill_template(std::string_view tmpl, int value) {
  std::string out(tmpl);
  const auto pos = out.find(kValuePlaceholder);
  out.replace(pos, kValuePlaceholder.size(), std::to_string(value));
  return out;
}

namespace detail {

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses a "root.Image.I0.Appearance.Brightness=50" style listing.
inline ParamVector parse_param_listing(std::string_view body,
                                       const std::array<std::string, 4>& keys) {
  std::array<std::optional<int>, 4> found;
  std::istringstream lines{std::string(body)};
  for (std::string raw; std::getline(lines, raw);) {
    const std::string_view line = detail::trim(raw);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    std::string_view key = detail::trim(line.substr(0, eq));
    if (const auto dot = key.rfind('.'); dot != std::string_view::npos) key.remove_prefix(dot + 1);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!detail::iequals(key, keys[i])) continue;
      const std::string value(detail::trim(line.substr(eq + 1)));
      try {
        std::size_t used = 0;
        found[i] = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ProtocolError("parameter listing: non-integer value for " + keys[i]);
      }
    }
  }
  ParamVector p;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!found[i]) throw ProtocolError("parameter listing: missing " + keys[i]);
    p.values[i] = *found[i];
  }
  return p;
}

class HttpCamera final : public CameraBackend {
 public:
  explicit HttpCamera(HttpCameraConfig cfg) : cfg_(std::move(cfg)) { validate(cfg_); }

  ParamVector get_params() override {
    const auto res = net::get(cfg_.get_url, cfg_.timeout_ms);
    return parse_param_listing(res.body, cfg_.param_keys);
  }

  void set_param(Param which, int value) override {
    if (!is_valid_value(value, cfg_.step)) {
      throw OutOfRange(std::string(param_name(which)) + " value " + std::to_string(value) +
                       " is not on the 0..100 grid");
    }
    net::get(fill_template(cfg_.set_url_templates[static_cast<std::size_t>(which)], value),
             cfg_.timeout_ms);
  }

  /// t is ignored: a network camera always returns its live frame.
  Frame capture(double /*t*/) override {
    const auto res = net::get(cfg_.capture_url, cfg_.timeout_ms);
    const std::string type = res.content_type.substr(0, res.content_type.find(';'));
    if (type != "image/png" && type != "image/jpeg") {
      throw DecodeError("capture returned content type '" + res.content_type + "'");
    }
    return decode_image(Bytes(res.body.begin(), res.body.end()));
  }

  const HttpCameraConfig& config() const noexcept { return cfg_; }

 private:
  HttpCameraConfig cfg_;
};

}  // namespace camtune
