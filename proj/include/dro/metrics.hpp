// Copyright 2026, Autonomous Space Robotics Lab (ASRL)
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * \file metrics.hpp
 * \brief KITTI relative errors and SE(2) relative pose error.
 *
 * Both metrics interpolate the estimate onto the ground-truth stamps
 * (linear position, shortest-arc heading) and are invariant to a global
 * rigid transform of the estimate.
 */
#pragma once

#include <map>

#include "dro/dataset_io.hpp"

namespace dro {

/// Estimate resampled at time t (linear position, shortest-arc angle).
TimedPose interpolate_pose(const Trajectory& trajectory, double t);

struct KittiResult {
  double trans_percent = 0.0;      ///< average over all segments
  double rot_deg_per_100m = 0.0;
  int segment_count = 0;
  bool valid = false;              ///< false when no 100 m segment fits
  /// Per-length averages keyed by segment length in metres.
  std::map<int, std::pair<double, double>> per_length;
};

/// KITTI relative errors: segment lengths 100..800 m in 100 m steps, segment
/// starts every 5 ground-truth poses, errors taken from the relative pose
/// between segment endpoints and normalized by segment length.
KittiResult kitti_errors(const Trajectory& est, const Trajectory& gt);

struct RpeResult {
  double rmse_percent = 0.0;
  int segment_count = 0;
  bool valid = false;
};

/// SE(2) relative pose error: sub-segments of 50/100/150/200 m, estimate
/// rigidly aligned to ground truth per segment (closed-form 2-D Procrustes),
/// position RMSE reported as a percentage of the segment length.
RpeResult rpe_se2(const Trajectory& est, const Trajectory& gt);

}  // namespace dro
