#pragma once

#include "camtune/analytics/detect.hpp"
#include "camtune/camera/camera.hpp"
#include "camtune/camera/http_camera.hpp"
#include "camtune/error.hpp"
#include "camtune/harness/config.hpp"
#include "camtune/harness/experiment.hpp"
#include "camtune/imaging/enhance.hpp"
#include "camtune/imaging/frame.hpp"
#include "camtune/imaging/image_io.hpp"
#include "camtune/imaging/metrics.hpp"
#include "camtune/imaging/params.hpp"
#include "camtune/reward/estimator.hpp"
#include "camtune/reward/external.hpp"
#include "camtune/rl/agent.hpp"
#include "camtune/rl/learning.hpp"
#include "camtune/rl/persistence.hpp"
#include "camtune/rl/qtable.hpp"
#include "camtune/scene/scene.hpp"
