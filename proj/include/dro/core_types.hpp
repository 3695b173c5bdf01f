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
 * \file core_types.hpp
 * \brief Shared domain types, units, and frame conventions for the DRO
 *        odometry engine. All other modules depend on this header only.
 *
 * Conventions:
 *  - Poses are world-from-body. The relative pose of the radar at time t
 *    with respect to the scan anchor at time t1 is anchor^-1 * pose(t).
 *  - SO(2) matrices use the layout [[cos, sin], [-sin, cos]]; angles are
 *    stored unnormalized (accumulated) and wrapped only for comparisons.
 *  - Units are SI throughout: metres, seconds, radians.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dro {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
/// Intensity images are row-major float matrices (rows = azimuths or map y).
using ImageF =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double theta) {
  double w = std::remainder(theta, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

/// SO(2) matrix for an angle, [[cos, sin], [-sin, cos]] layout.
/// Throws std::invalid_argument on non-finite input.
Mat2 angle_to_rot(double theta);

/// Recovers the angle of an SO(2) matrix in (-pi, pi].
double rot_to_angle(const Mat2& rot);

/// Derivative of angle_to_rot at zero: d/dtheta R(theta) = R(theta) * kSo2Gen.
inline Mat2 so2_generator() {
  Mat2 j;
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

enum class ChirpDir : std::uint8_t { kUp = 0, kDown = 1 };

/// A rigid 2-D pose with a timestamp.
struct Pose2 {
  Mat2 rotation = Mat2::Identity();
  Vec2 position = Vec2::Zero();
  double timestamp = 0.0;

  static Pose2 from_angle(double theta, const Vec2& position, double timestamp) {
    return Pose2{angle_to_rot(theta), position, timestamp};
  }

  double angle() const { return rot_to_angle(rotation); }

  Pose2 inverse() const {
    Pose2 inv;
    inv.rotation = rotation.transpose();
    inv.position = -(rotation.transpose() * position);
    inv.timestamp = timestamp;
    return inv;
  }

  /// Composition: this * other (apply other in this pose's frame).
  Pose2 operator*(const Pose2& other) const {
    Pose2 out;
    out.rotation = rotation * other.rotation;
    out.position = rotation * other.position + position;
    out.timestamp = other.timestamp;
    return out;
  }

  /// Transforms a point from this pose's frame into the parent frame.
  Vec2 operator*(const Vec2& point) const {
    return rotation * point + position;
  }
};

/// One 360 degree polar sweep: N azimuth rows by M range bins of intensity,
/// with a per-azimuth timestamp and chirp direction. Range bin m is centred
/// at m * range_resolution metres.
struct RadarScan {
  std::vector<double> azimuths;    ///< rad, length N, strictly increasing
  std::vector<double> timestamps;  ///< s, length N, strictly increasing
  double range_resolution = 0.0;   ///< m per bin
  ImageF intensity;                ///< N x M, finite, >= 0
  std::vector<ChirpDir> chirp_dir; ///< length N

  int n_azimuths() const { return static_cast<int>(intensity.rows()); }
  int n_range_bins() const { return static_cast<int>(intensity.cols()); }

  /// True when chirp directions strictly alternate row to row.
  bool alternating_chirps() const;
  /// True when every row carries the same chirp direction.
  bool single_chirp() const;

  /// Checks all type invariants, throws std::invalid_argument on violation.
  void validate() const;
};

/// Per-scan estimated state: body velocity, angular rate (gyro-less mode
/// only), and the world pose anchored at the scan's first timestamp.
struct ScanState {
  double omega = 0.0;           ///< rad/s, used by the constant-rate model
  Vec2 v_body = Vec2::Zero();   ///< m/s, body-centric, constant over the scan
  Pose2 anchor;                 ///< world pose at tau_1
};

/// Timestamped yaw-rate samples with a tracked additive bias estimate.
struct GyroSeries {
  std::vector<double> timestamps;  ///< s, strictly increasing
  std::vector<double> rates;       ///< rad/s, raw measurements
  double bias = 0.0;               ///< rad/s, subtracted on use

  bool empty() const { return timestamps.empty(); }
  /// True when [t0, t1] lies inside the sampled interval.
  bool covers(double t0, double t1) const;
  /// Linear interpolation of the raw rate; throws outside coverage.
  double raw_rate_at(double t) const;
  void validate() const;
};

/// Cartesian intensity image blended over time. origin holds the metric
/// coordinates of pixel (0,0); rows grow along +y, columns along +x.
struct LocalMap {
  ImageF image;                ///< H x W, finite, >= 0
  Vec2 origin = Vec2::Zero();  ///< m, coordinates of pixel (0,0) centre
  double resolution = 0.0;     ///< m per pixel
  double frame_time = 0.0;     ///< s, radar frame the map is expressed in

  int height() const { return static_cast<int>(image.rows()); }
  int width() const { return static_cast<int>(image.cols()); }
  bool empty() const { return image.size() == 0; }
};

/// Which objective functions drive the optimization.
enum class Mode { kGD, kG, kD };

Mode mode_from_string(const std::string& name);
std::string mode_to_string(Mode mode);

/// Tunable parameters for the whole pipeline. Defaults target the synthetic
/// desk-scale scenes; all fields are overridable from a key=value file.
struct Config {
  double gamma = 0.1;              ///< local map blend factor, [0, 1]
  double beta = 0.2;               ///< Doppler scale, m per (m/s)
  double map_resolution = 0.5;     ///< m per pixel
  double map_extent = 200.0;       ///< m, square local map side length
  double gp_lengthscale_az = 1.0;  ///< azimuth-index units
  double gp_lengthscale_range = 1.5;  ///< range-bin units
  double gp_noise = 0.1;           ///< observation noise sigma
  int gp_neighborhood_u = 5;       ///< stencil rows (odd)
  int gp_neighborhood_v = 5;       ///< stencil columns (odd)
  double filter_blur_sigma = 1.0;  ///< bins, 0 disables the per-row blur
  double step_init = 0.1;          ///< initial gradient-ascent step
  double step_min = 1e-4;          ///< terminate once the step shrinks below
  int max_iters = 60;
  double accel_threshold = 15.0;   ///< m/s^2, robust re-run trigger
  double static_vel_threshold = 0.05;  ///< m/s, gyro-bias static gate
  int bias_init_samples = 100;     ///< Q, gyro samples averaged at init
  double bias_lowpass_alpha = 0.05;
  double vy_bias_lowpass_alpha = 0.02;
  double axle_offset = 0.0;        ///< m, radar to rear-axle lever arm (body x)
  double max_body_speed = 60.0;    ///< m/s, physical cap on |v_body|
  Mode mode = Mode::kGD;

  void validate() const;
};

}  // namespace dro
