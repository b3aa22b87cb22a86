#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>

#include "support/fixtures.hpp"
#include "support/mock_server.hpp"

using namespace camtune;
using testing_support::fixture_scene;
using testing_support::MockServer;

namespace {

constexpr ParamVector kS1{20, 20, 50, 50};

SimulatedCamera make_camera(ParamVector p = {}) { return SimulatedCamera(fixture_scene(), p); }

/// Fake network camera: stores parameters, serves a listing and a PNG frame.
class FakeCameraServer {
 public:
  FakeCameraServer() {
    auto& s = server_.server();
    s.Get("/param.cgi", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu_);
      if (fail_sets_) {
        res.status = 500;
        return;
      }
      for (const auto& [key, value] : req.params) {
        if (key != "action") values_[key] = std::stoi(value);
      }
      res.set_content("OK", "text/plain");
    });
    s.Get("/list.cgi", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mu_);
      std::string body;
      for (const auto& [key, value] : values_) {
        body += "root.Image.I0.Appearance." + key + "=" + std::to_string(value) + "\n";
      }
      res.set_content(body, "text/plain");
    });
    s.Get("/image.png", [this](const httplib::Request&, httplib::Response& res) {
      const Bytes png = encode_png(frame_);
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
    s.Get("/image.txt", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("not an image", "text/plain");
    });
    s.Get("/garbage.png", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("\x89PNG broken", "image/png");
    });
    s.Get("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(800));
      res.set_content("late", "text/plain");
    });
    server_.start();
  }

  HttpCameraConfig config(const std::string& capture = "/image.png") const {
    HttpCameraConfig cfg;
    cfg.set_url_templates = {server_.url("/param.cgi?action=update&Brightness={value}"),
                             server_.url("/param.cgi?action=update&Contrast={value}"),
                             server_.url("/param.cgi?action=update&ColorLevel={value}"),
                             server_.url("/param.cgi?action=update&Sharpness={value}")};
    cfg.get_url = server_.url("/list.cgi");
    cfg.capture_url = server_.url(capture);
    cfg.timeout_ms = 300;
    return cfg;
  }

  std::string url(const std::string& path) const { return server_.url(path); }
  void set_fail(bool f) {
    std::lock_guard lock(mu_);
    fail_sets_ = f;
  }

  Frame frame_{Frame(5, 4, Rgb{10, 200, 30})};

 private:
  MockServer server_;
  std::mutex mu_;
  std::map<std::string, int> values_{
      {"Brightness", 50}, {"Contrast", 50}, {"ColorLevel", 50}, {"Sharpness", 50}};
  bool fail_sets_ = false;
};

}  // namespace

TEST(SimulatedCamera, ReadAfterWrite) {
  auto cam = make_camera(kS1);
  EXPECT_EQ(cam.get_params(), kS1);
  cam.set_param(Param::kBrightness, 70);
  EXPECT_EQ(cam.get_params().brightness(), 70);
  cam.set_param(Param::kSharpness, 30);
  EXPECT_EQ(cam.get_params(), (ParamVector{70, 20, 50, 30}));
}

TEST(SimulatedCamera, RejectsOffGridValues) {
  auto cam = make_camera();
  EXPECT_THROW(cam.set_param(Param::kContrast, 105), OutOfRange);
  EXPECT_THROW(cam.set_param(Param::kContrast, -10), OutOfRange);
  EXPECT_THROW(cam.set_param(Param::kContrast, 45), OutOfRange);
  EXPECT_EQ(cam.get_params(), ParamVector{});
  EXPECT_EQ(cam.clock().micros(), 0);
  EXPECT_THROW(SimulatedCamera(fixture_scene(), ParamVector{55, 50, 50, 50}), OutOfRange);
}

TEST(SimulatedCamera, ActuationAdvancesClockByLatency) {
  auto cam = make_camera();
  cam.set_param(Param::kColor, 60);
  EXPECT_EQ(cam.clock().micros(), 200000);
  cam.set_param(Param::kColor, 70);
  EXPECT_EQ(cam.clock().micros(), 400000);
  EXPECT_EQ(cam.actuations(), 2);
  cam.reset_params(kS1);
  EXPECT_EQ(cam.clock().micros(), 400000);

  SimulatedCamera fast(fixture_scene(), {}, 10, 35);
  fast.set_param(Param::kColor, 60);
  EXPECT_EQ(fast.clock().micros(), 35000);
}

TEST(SimulatedCamera, CaptureExamples) {
  auto cam = make_camera();
  EXPECT_EQ(cam.capture(0.0), fixture_scene()->base);
  cam.set_param(Param::kBrightness, 0);
  const Frame black = cam.capture(1.0);
  for (const Rgb& p : black.pixels()) EXPECT_EQ(p, (Rgb{0, 0, 0}));
}

TEST(SimulatedCamera, NightDarkerThanDay) {
  const auto two = std::make_shared<const SceneManifest>(
      load_manifest(testing_support::fixture("scene_two.json")));
  SimulatedCamera cam(two, {});
  const double day = measure_brightness(cam.capture(10.0));
  const double night = measure_brightness(cam.capture(130.0));
  EXPECT_LT(night, day);
}

TEST(SimulatedCamera, CaptureIsPure) {
  const auto two = std::make_shared<const SceneManifest>(
      load_manifest(testing_support::fixture("scene_two.json")));
  SimulatedCamera cam(two, {30, 60, 70, 80});
  EXPECT_EQ(cam.capture(125.0), cam.capture(125.0));
  EXPECT_EQ(cam.scene().base, two->base);
}

TEST(SimulatedCamera, SetParamChangesExactlyOneComponent) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> grid(0, 10);
  std::uniform_int_distribution<int> which(0, 3);
  auto cam = make_camera();
  for (int i = 0; i < 500; ++i) {
    const ParamVector before = cam.get_params();
    const Param p = kAllParams[which(rng)];
    const int v = grid(rng) * 10;
    cam.set_param(p, v);
    const ParamVector after = cam.get_params();
    for (Param q : kAllParams) {
      EXPECT_EQ(after[q], q == p ? v : before[q]);
    }
  }
}

TEST(SimulatedCamera, BrightnessParameterMonotone) {
  auto cam = make_camera();
  double previous = -1.0;
  for (int v = 0; v <= 100; v += 10) {
    cam.reset_params({v, 50, 50, 50});
    const double m = measure_brightness(cam.capture(0.0));
    EXPECT_GE(m, previous);
    previous = m;
  }
}

TEST(HttpCameraConfig, Validation) {
  HttpCameraConfig cfg;
  cfg.set_url_templates = {"http://h/a?b={value}", "http://h/a?c={value}", "http://h/a?d={value}",
                           "http://h/a?e={value}"};
  cfg.get_url = "http://h/list";
  cfg.capture_url = "http://h/img";
  EXPECT_NO_THROW(validate(cfg));
  auto bad = cfg;
  bad.set_url_templates[2] = "http://h/a?d=5";
  EXPECT_THROW(validate(bad), ConfigError);
  bad = cfg;
  bad.set_url_templates[0] = "http://h/a?b={value}&x={value}";
  EXPECT_THROW(validate(bad), ConfigError);
  bad = cfg;
  bad.timeout_ms = 0;
  EXPECT_THROW(validate(bad), ConfigError);
  bad = cfg;
  bad.capture_url = "https://h/img";
  EXPECT_THROW(validate(bad), ConfigError);
  EXPECT_EQ(fill_template("http://h/a?b={value}&z=1", 70), "http://h/a?b=70&z=1");
}

TEST(ParamListing, ParsesDottedKeyListing) {
  const std::array<std::string, 4> keys{"Brightness", "Contrast", "ColorLevel", "Sharpness"};
  const std::string body =
      "root.Image.I0.Appearance.Brightness=30\r\n"
      "root.Image.I0.Appearance.ColorLevel = 60\n"
      "root.Image.I0.Appearance.Rotation=0\n"
      "root.Image.I0.Appearance.contrast=40\n"
      "Sharpness=90\n";
  EXPECT_EQ(parse_param_listing(body, keys), (ParamVector{30, 40, 60, 90}));
  EXPECT_THROW(parse_param_listing("Brightness=30\nContrast=40\nColorLevel=60\n", keys),
               ProtocolError);
  EXPECT_THROW(parse_param_listing("Brightness=3x\nContrast=40\nColorLevel=60\nSharpness=1\n", keys),
               ProtocolError);
}

TEST(HttpCamera, GetSetCapture) {
  FakeCameraServer srv;
  HttpCamera cam(srv.config());
  EXPECT_EQ(cam.get_params(), (ParamVector{50, 50, 50, 50}));
  cam.set_param(Param::kBrightness, 70);
  cam.set_param(Param::kColor, 20);
  EXPECT_EQ(cam.get_params(), (ParamVector{70, 50, 20, 50}));
  EXPECT_EQ(cam.capture(0.0), srv.frame_);
  EXPECT_THROW(cam.set_param(Param::kContrast, 105), OutOfRange);
}

TEST(HttpCamera, ServerErrorIsTransportAndLeavesParams) {
  FakeCameraServer srv;
  HttpCamera cam(srv.config());
  srv.set_fail(true);
  EXPECT_THROW(cam.set_param(Param::kBrightness, 90), TransportError);
  EXPECT_EQ(cam.get_params(), (ParamVector{50, 50, 50, 50}));
}

TEST(HttpCamera, CaptureErrors) {
  FakeCameraServer srv;
  EXPECT_THROW(HttpCamera(srv.config("/image.txt")).capture(0.0), DecodeError);
  EXPECT_THROW(HttpCamera(srv.config("/garbage.png")).capture(0.0), DecodeError);
  EXPECT_THROW(HttpCamera(srv.config("/missing")).capture(0.0), TransportError);
  EXPECT_THROW(HttpCamera(srv.config("/slow")).capture(0.0), TransportError);
}

TEST(HttpCamera, UnreachableHostIsTransport) {
  HttpCameraConfig cfg;
  cfg.set_url_templates = {"http://127.0.0.1:1/a?b={value}", "http://127.0.0.1:1/a?c={value}",
                           "http://127.0.0.1:1/a?d={value}", "http://127.0.0.1:1/a?e={value}"};
  cfg.get_url = "http://127.0.0.1:1/list";
  cfg.capture_url = "http://127.0.0.1:1/img";
  cfg.timeout_ms = 200;
  HttpCamera cam(cfg);
  EXPECT_THROW(cam.get_params(), TransportError);
  EXPECT_THROW(cam.set_param(Param::kBrightness, 10), TransportError);
}
