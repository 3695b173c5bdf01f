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
 * \file solver.hpp
 * \brief Normalized gradient ascent over the per-scan state.
 *
 * The combined objective is maximized with S <- S + c * g / |g|, c starting
 * at step_init and halved on every non-ascending step until it falls below
 * step_min or the iteration cap is reached. The state vector concatenates
 * the angular rate (gyro-less mode only) and the body velocity; a single
 * normalization covers the full vector.
 */
#pragma once

#include <optional>

#include "dro/core_types.hpp"
#include "dro/doppler_objective.hpp"
#include "dro/gp_infill.hpp"
#include "dro/registration.hpp"

namespace dro {

/// Everything the objectives need for one scan. Mode G leaves `images`
/// null, mode D leaves `map` and `filtered` null.
struct SolveInputs {
  const ImageF* filtered = nullptr;       ///< filtered polar intensities
  ScanGeometry geometry;                  ///< shared azimuth geometry
  const LocalMap* map = nullptr;
  const ChirpImages* images = nullptr;    ///< filtered chirp images
  const GyroSeries* gyro = nullptr;       ///< null selects the constant-rate model
  double t_begin = 0.0;                   ///< tau_1
  double t_end = 0.0;                     ///< first timestamp of the next scan
  double vy_bias = 0.0;
  const ImageF* weights_intensity = nullptr;
  const ImageF* weights_doppler = nullptr;
};

struct SolveDiagnostics {
  int iterations = 0;
  double final_score = 0.0;
  bool degenerate = false;        ///< zero gradient at the initial state
  bool robust_triggered = false;  ///< acceleration check fired
  bool robust_flagged = false;    ///< re-run still violates the threshold
};

/// Robust factor of Eq-style reweighting: rho = (|delta| - 1)^6 for
/// intensities in [0, 1]; rho(0) = 1, rho(1) = 0.
double robust_weight(double measured, double interpolated);

/// Per-bin robust weights of the intensity objective at the given state.
ImageF robust_weights_intensity(const SolveInputs& in, const ScanState& state,
                                const Config& config);
/// Per-bin robust weights of the Doppler objective at the given state.
ImageF robust_weights_doppler(const SolveInputs& in, const ScanState& state,
                              const Config& config);

/// Maximizes the active objectives from `init`. Returns the converged state;
/// fills `diag` with the iteration count, final score, and the degenerate
/// flag when the objective gradient vanishes at the start.
ScanState optimize(const SolveInputs& in, const ScanState& init,
                   const Config& config, SolveDiagnostics& diag);

/// Robust path: recomputes the weights at `prev` (the warm start), then
/// re-runs optimize on the reweighted objectives. Sets robust_flagged when
/// the re-run still violates the acceleration threshold against `prev`.
ScanState robust_reoptimize(const SolveInputs& in, const ScanState& prev,
                            const Config& config, SolveDiagnostics& diag);

}  // namespace dro
