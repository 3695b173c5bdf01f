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
 * \file simulator.hpp
 * \brief Synthetic FMCW radar worlds used as the ground-truth oracle.
 *
 * Scenes are point reflectors observed along an analytic SE(2) trajectory.
 * Each azimuth row is rendered at its own timestamp (motion distortion) and
 * the measured range carries the Doppler shift r +- beta*u/2 with u the
 * radial closing velocity, matching the estimator's correction convention.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dro/core_types.hpp"
#include "dro/dataset_io.hpp"

namespace dro {

struct Reflector {
  double x = 0.0;
  double y = 0.0;
  double reflectivity = 1.0;
};

enum class ChirpPattern { kTriangular, kSawtooth };

struct RadarParams {
  int n_azimuths = 400;
  int n_range_bins = 256;
  double range_resolution = 0.5;   ///< m
  double scan_period = 0.25;       ///< s (4 Hz)
  double beam_width = 0.0157;      ///< rad, Gaussian falloff sigma
  ChirpPattern pattern = ChirpPattern::kTriangular;
};

struct NoiseParams {
  double intensity_sigma = 0.0;
  double gyro_sigma = 0.0;         ///< rad/s
  double gyro_bias = 0.0;          ///< rad/s, constant additive bias
  double doppler_vy_bias = 0.0;    ///< m/s, lateral bias injected into u
};

/// Piecewise-constant body velocity and yaw rate; poses are closed form
/// within each segment, so ground truth carries no integration error.
struct TrajectorySegment {
  double duration = 0.0;
  Vec2 v_body = Vec2::Zero();
  double omega = 0.0;
};

class PiecewiseTrajectory {
 public:
  PiecewiseTrajectory() = default;
  PiecewiseTrajectory(double t0, const Vec2& start_position, double start_theta,
                      std::vector<TrajectorySegment> segments);

  double t_begin() const { return t0_; }
  double t_end() const;
  const std::vector<TrajectorySegment>& segments() const { return segments_; }
  /// Queries clamp to the trajectory span.
  double theta_at(double t) const;
  Pose2 pose_at(double t) const;
  Vec2 v_body_at(double t) const;
  Vec2 v_world_at(double t) const;
  double omega_at(double t) const;

 private:
  std::size_t segment_of(double t) const;
  double t0_ = 0.0;
  std::vector<TrajectorySegment> segments_;
  std::vector<double> knot_times_;
  std::vector<double> knot_thetas_;
  std::vector<Vec2> knot_positions_;
};

struct Scene {
  std::vector<Reflector> reflectors;
  PiecewiseTrajectory trajectory;
  RadarParams radar;
  NoiseParams noise;
  double beta = 0.2;               ///< m per (m/s)
  double gyro_rate_hz = 100.0;
};

/// Shipped presets: "suburb", "tunnel", "corridor-empty".
Scene make_preset(const std::string& name, std::uint64_t seed);

/// Scene file: key=value lines plus bare reflector lines x_m,y_m,reflectivity;
/// repeated `segment=duration,vx,vy,omega` keys build the trajectory.
Scene read_scene_file(const std::filesystem::path& file);
void write_scene_file(const std::filesystem::path& file, const Scene& scene);

/// Renders one polar sweep starting at `scan_start`.
RadarScan synth_scan(const Scene& scene, double scan_start, std::uint64_t seed);

/// Samples w = omega_true(t) + bias + noise over [t0, t1].
GyroSeries synth_gyro(const Scene& scene, double t0, double t1, double rate_hz,
                      std::uint64_t seed);

/// Writes the dataset directory layout: scans/, gyro.csv, gt_poses.csv
/// (poses at every scan start plus the final scan end).
void emit_dataset(const Scene& scene, double duration,
                  const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace dro
