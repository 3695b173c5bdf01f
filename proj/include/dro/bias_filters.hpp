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
 * \file bias_filters.hpp
 * \brief Online gyro-bias and lateral Doppler velocity-bias estimation.
 */
#pragma once

#include <span>

#include "dro/core_types.hpp"

namespace dro {

/// Static heuristic: when the platform's velocity estimate is (near) zero,
/// so is its true angular rate, so raw gyro readings expose the bias. The
/// estimate initializes from the mean of the first Q samples collected
/// while static and is then low-pass tracked during static phases. Moving
/// phases leave the estimate untouched and reset the initial collection.
class GyroBiasFilter {
 public:
  /// `window` holds the raw gyro rates within the scan just solved, `speed`
  /// the magnitude of the converged velocity estimate. Returns the bias.
  double update(std::span<const double> window, double speed,
                const Config& config);

  double bias() const { return bias_; }
  bool initialized() const { return initialized_; }

 private:
  std::vector<double> pending_;
  double bias_ = 0.0;
  bool initialized_ = false;
};

/// Tracks the lateral component of the Doppler velocity bias through the
/// non-slip constraint: the Doppler-only velocity estimate transferred to
/// the rear axle should have zero lateral component, so any residual is an
/// observation of the bias.
class LateralVelBiasFilter {
 public:
  /// `v_doppler_only` is the body-frame velocity from a Doppler-only solve,
  /// `omega` the scan's angular rate. Returns the updated bias.
  double update(const Vec2& v_doppler_only, double omega, const Config& config);

  double bias() const { return bias_y_; }

 private:
  double bias_y_ = 0.0;
};

}  // namespace dro
