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
 * \file registration.hpp
 * \brief Direct intensity objective against the on-the-fly local map.
 *
 * Polar measurements are corrected for motion and Doppler distortion and
 * warped into the map frame:
 *   [x, y] = R_rel(tau_n) * ((r_m + s_n * dr_n / 2) * beam_n) + p_rel(tau_n)
 * with dr_n = beta * beam_n^T (v_body - v_bias), s_n = -1 for up-chirps and
 * +1 for down-chirps, and the relative pose taken at the scan anchor during
 * optimization or at the following scan start for map updates. The objective
 * is the cross-correlation of the corrected scan with the map.
 */
#pragma once

#include <optional>

#include "dro/core_types.hpp"
#include "dro/motion_models.hpp"

namespace dro {

/// Bilinear map intensity at metric (x, y); zero value and zero gradient
/// outside the pixel-centre hull.
double bilinear(const LocalMap& map, double x, double y);

struct BilinearSample {
  double value = 0.0;
  double ddx = 0.0;  ///< d value / d x, per metre
  double ddy = 0.0;
};
BilinearSample bilinear_grad(const LocalMap& map, double x, double y);

/// Geometry shared by a scan and its filtered/infilled images.
struct ScanGeometry {
  const std::vector<double>* azimuths = nullptr;
  const std::vector<double>* timestamps = nullptr;
  const std::vector<ChirpDir>* chirp_dir = nullptr;
  double range_resolution = 0.0;
  int n_range_bins = 0;

  static ScanGeometry of(const RadarScan& scan) {
    return {&scan.azimuths, &scan.timestamps, &scan.chirp_dir,
            scan.range_resolution, scan.n_range_bins()};
  }
};

/// Per-azimuth warp terms at a given target time.
struct AzimuthFrame {
  Mat2 rot;          ///< R_{target <- tau_n}
  Vec2 pos;          ///< p_{target <- tau_n}
  Vec2 beam;         ///< [cos a_n, sin a_n]
  double dshift;     ///< dr_n, Doppler-induced range shift, metres
  double chirp_sign; ///< -1 up, +1 down; applied as chirp_sign * dshift / 2
};

/// Computes the warp terms for every azimuth. `target_time` is tau_1 during
/// optimization and the following scan start for map updates. `vy_bias` is
/// the lateral Doppler velocity bias subtracted inside the shift.
std::vector<AzimuthFrame> azimuth_frames(const ScanGeometry& geometry,
                                         const ScanState& state,
                                         const MotionModel& model, double beta,
                                         double target_time,
                                         double vy_bias = 0.0);

/// Motion- and Doppler-corrected Cartesian coordinates of every bin.
struct WarpedPoints {
  Eigen::MatrixXd x;  ///< N x M
  Eigen::MatrixXd y;
};
WarpedPoints warp_points(const ScanGeometry& geometry, const ScanState& state,
                         const MotionModel& model, const Config& config,
                         double target_time, double vy_bias = 0.0);

struct IntensityObjectiveResult {
  double score = 0.0;
  Vec2 grad_v = Vec2::Zero();
  double grad_omega = 0.0;
};

/// Cross-correlation of the (filtered) scan against the map, with analytic
/// gradients w.r.t. v_body and, when the model carries one, the angular
/// rate. Zero-intensity bins are skipped; `weights` (when given) applies the
/// per-bin robust factors.
IntensityObjectiveResult intensity_objective(
    const ImageF& intensity, const ScanGeometry& geometry, const LocalMap& map,
    const ScanState& state, const MotionModel& model, const Config& config,
    const ImageF* weights = nullptr, double vy_bias = 0.0);

/// Allocates the square map grid centred on the radar.
LocalMap make_empty_map(const Config& config, double frame_time);

/// Splats the corrected scan into a map-aligned image with per-pixel weight
/// normalization (bilinear scatter).
ImageF rasterize_scan(const ImageF& intensity, const ScanGeometry& geometry,
                      const ScanState& state, const MotionModel& model,
                      const Config& config, double target_time,
                      double vy_bias = 0.0);

/// Re-expresses the map in the radar frame at `target_time`, rasterizes the
/// scan there, and blends the two: M <- (1-gamma) M + gamma I_M. An empty
/// input map is initialized directly with the rasterized scan.
LocalMap update_map(const LocalMap& map, const ImageF& intensity,
                    const ScanGeometry& geometry, const ScanState& state,
                    const MotionModel& model, const Config& config,
                    double target_time, double vy_bias = 0.0);

}  // namespace dro
