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
 * \file pipeline.hpp
 * \brief End-to-end per-scan estimation loop.
 *
 * For each scan: filter (and, in Doppler modes, split/infill) the data,
 * build the motion model, solve from the previous scan's state, run the
 * robust path when the implied acceleration is unphysical, update the bias
 * filters and the local map, and chain the anchor pose to the scan end.
 * The first scan initializes the map at zero velocity without estimation.
 */
#pragma once

#include <optional>

#include "dro/core_types.hpp"
#include "dro/dataset_io.hpp"
#include "dro/solver.hpp"

namespace dro {

struct ScanResult {
  double t_begin = 0.0;
  double t_end = 0.0;
  Pose2 pose_begin;        ///< anchor pose at tau_1
  Pose2 pose_end;          ///< pose at the following scan start
  ScanState state;         ///< converged state (anchor = pose_begin)
  double omega = 0.0;      ///< mean angular rate over the scan
  double gyro_bias = 0.0;  ///< filter state after this scan
  double vy_bias = 0.0;
  SolveDiagnostics diag;
};

struct PipelineResult {
  std::vector<ScanResult> scans;
  /// Poses at every scan start plus the final scan end.
  Trajectory poses;
};

/// Runs odometry over in-memory scans. `gyro` may be null (constant-rate
/// model). Throws on invalid data; an empty scan list yields an empty result.
PipelineResult run_odometry(const std::vector<RadarScan>& scans,
                            const GyroSeries* gyro, const Config& config);

/// File front end: reads the dataset layout from `data_dir`, runs odometry,
/// and writes poses.csv, biases.csv, and diag.csv into `out_dir`.
PipelineResult run_dataset(const std::filesystem::path& data_dir,
                           const Config& config,
                           const std::filesystem::path& out_dir);

}  // namespace dro
