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
 * \file dataset_io.hpp
 * \brief On-disk dataset layout.
 *
 * A dataset directory contains:
 *   scans/NNNNNN.bin   row-major N x M float32 little-endian intensities
 *   scans/NNNNNN.meta  UTF-8 key=value lines (n_azimuths, n_range_bins,
 *                      range_resolution_m, azimuths_rad, timestamps_s,
 *                      chirp_up), list values comma-separated
 *   gyro.csv           header, then timestamp_s,omega_rad_s
 *   gt_poses.csv       header, then timestamp_s,x_m,y_m,theta_rad
 *
 * Doubles are printed with 17 significant digits so every file round-trips
 * bit-exactly.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "dro/core_types.hpp"

namespace dro {

struct TimedPose {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};
using Trajectory = std::vector<TimedPose>;

void write_scan(const std::filesystem::path& scans_dir, int index,
                const RadarScan& scan);
RadarScan read_scan(const std::filesystem::path& scans_dir, int index);

/// Reads scans/000000.bin onward sequentially; throws if an index is missing
/// in the middle of the sequence. An empty or absent scans/ dir yields none.
std::vector<RadarScan> read_all_scans(const std::filesystem::path& data_dir);

void write_gyro_csv(const std::filesystem::path& file, const GyroSeries& gyro);
GyroSeries read_gyro_csv(const std::filesystem::path& file);

void write_poses_csv(const std::filesystem::path& file, const Trajectory& poses);
Trajectory read_poses_csv(const std::filesystem::path& file);

/// key=value config file covering every Config field; unknown keys rejected.
Config read_config_file(const std::filesystem::path& file);
void write_config_file(const std::filesystem::path& file, const Config& config);

/// Debug dump of a local map using the scan binary+meta convention.
void write_map_dump(const std::filesystem::path& prefix, const LocalMap& map);

}  // namespace dro
