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

#include "dro/bias_filters.hpp"

#include <numeric>

namespace dro {

double GyroBiasFilter::update(std::span<const double> window, double speed,
                              const Config& config) {
  if (window.empty()) return bias_;
  if (speed >= config.static_vel_threshold) {
    if (!initialized_) pending_.clear();  // static samples must be consecutive
    return bias_;
  }
  const double window_mean =
      std::accumulate(window.begin(), window.end(), 0.0) /
      static_cast<double>(window.size());
  if (initialized_) {
    bias_ = (1.0 - config.bias_lowpass_alpha) * bias_ +
            config.bias_lowpass_alpha * window_mean;
    return bias_;
  }
  pending_.insert(pending_.end(), window.begin(), window.end());
  if (static_cast<int>(pending_.size()) >= config.bias_init_samples) {
    bias_ = std::accumulate(pending_.begin(),
                            pending_.begin() + config.bias_init_samples, 0.0) /
            config.bias_init_samples;
    initialized_ = true;
    pending_.clear();
  }
  return bias_;
}

double LateralVelBiasFilter::update(const Vec2& v_doppler_only, double omega,
                                    const Config& config) {
  // Axle velocity under the [[c, s], [-s, c]] rotation layout:
  // v_axle = v + omega * [lever_y, -lever_x], lever = (axle_offset, 0).
  const double observation = v_doppler_only.y() - omega * config.axle_offset;
  bias_y_ = (1.0 - config.vy_bias_lowpass_alpha) * bias_y_ +
            config.vy_bias_lowpass_alpha * observation;
  return bias_y_;
}

}  // namespace dro
