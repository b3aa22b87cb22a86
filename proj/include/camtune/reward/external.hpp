#pragma once

// Adapter for out-of-process quality models. Wire format:
//   request:  POST <endpoint>, Content-Type: image/png, body = PNG bytes
//   response: 200, application/json, {"score": <number>}

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "camtune/imaging/image_io.hpp"
#include "camtune/net/http.hpp"
#include "camtune/reward/estimator.hpp"

namespace camtune {

struct ExternalEstimatorConfig {
  std::string endpoint;
  int timeout_ms = 5000;
  double lo = 0.0;  // raw score mapped to 0
  double hi = 1.0;  // raw score mapped to 1
};

inline void validate(const ExternalEstimatorConfig& cfg) {
  if (!(cfg.lo < cfg.hi)) throw ConfigError("external estimator range needs lo < hi");
  if (cfg.timeout_ms <= 0) throw ConfigError("external estimator timeout must be > 0");
  net::split_url(cfg.endpoint);
}

inline double normalize_score(double raw, double lo, double hi) {
  return std::clamp((raw - lo) / (hi - lo), 0.0, 1.0);
}

/// Extracts the raw score; ProtocolError unless the body is {"score": finite number}.
inline double parse_score_response(const std::string& body) {
  const auto j = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("score response is not a JSON object");
  const auto it = j.find("score");
  if (it == j.end() || !it->is_number()) throw ProtocolError("score response lacks a numeric score");
  const double raw = it->get<double>();
  if (!std::isfinite(raw)) throw ProtocolError("score is not finite");
  return raw;
}

inline double score_external(const Frame& frame, const ExternalEstimatorConfig& cfg) {
  const Bytes png = encode_png(frame);
  const auto res = net::post(cfg.endpoint, std::string(png.begin(), png.end()), "image/png",
                             cfg.timeout_ms);
  return normalize_score(parse_score_response(res.body), cfg.lo, cfg.hi);
}

class ExternalEstimator final : public QualityEstimator {
 public:
  explicit ExternalEstimator(ExternalEstimatorConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_);
  }

  double score(const Frame& frame) const override { return score_external(frame, cfg_); }
  std::string name() const override { return "external"; }
  const ExternalEstimatorConfig& config() const noexcept { return cfg_; }

 private:
  ExternalEstimatorConfig cfg_;
};

}  // namespace camtune
