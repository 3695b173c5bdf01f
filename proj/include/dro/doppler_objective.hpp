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
 * \file doppler_objective.hpp
 * \brief Doppler velocity objective between the infilled chirp images.
 *
 * The up- and down-chirp measurements of the same reflector differ in range
 * by beta * u (u the radial velocity), so the down image correlates best
 * with the up image queried at r + dr_n once dr_n matches the body velocity:
 *   O_d = sum_nm down_nm * L(up, n, r_m + dr_n).
 */
#pragma once

#include "dro/core_types.hpp"
#include "dro/gp_infill.hpp"
#include "dro/motion_models.hpp"

namespace dro {

/// Linear interpolation along row n of the image at range r (metres).
/// Outside [0, (M-1) * resolution] the value and gradient are zero.
double row_query(const ImageF& image, int row, double r, double range_resolution);

struct RowSample {
  double value = 0.0;
  double ddr = 0.0;  ///< d value / d range, per metre
};
RowSample row_query_grad(const ImageF& image, int row, double r,
                         double range_resolution);

struct DopplerObjectiveResult {
  double score = 0.0;
  Vec2 grad_v = Vec2::Zero();
};

/// Cross-correlation of the down image with the Doppler-rectified up image,
/// with the analytic gradient w.r.t. v_body. `weights` applies per-bin
/// robust factors; `vy_bias` is subtracted from the velocity inside the
/// range shift. Throws std::invalid_argument on shape mismatch.
DopplerObjectiveResult doppler_objective(const ChirpImages& images,
                                         const ScanState& state,
                                         const MotionModel& model,
                                         const Config& config,
                                         const ImageF* weights = nullptr,
                                         double vy_bias = 0.0);

}  // namespace dro
