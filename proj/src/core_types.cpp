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

#include "dro/core_types.hpp"

#include <algorithm>

namespace dro {

Mat2 angle_to_rot(double theta) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("angle_to_rot: non-finite angle");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 rot;
  rot << c, s, -s, c;
  return rot;
}

double rot_to_angle(const Mat2& rot) {
  return std::atan2(rot(0, 1), rot(0, 0));
}

bool RadarScan::alternating_chirps() const {
  for (std::size_t n = 1; n < chirp_dir.size(); ++n)
    if (chirp_dir[n] == chirp_dir[n - 1]) return false;
  return chirp_dir.size() >= 2;
}

bool RadarScan::single_chirp() const {
  return std::all_of(chirp_dir.begin(), chirp_dir.end(),
                     [&](ChirpDir d) { return d == chirp_dir.front(); });
}

void RadarScan::validate() const {
  const int n = n_azimuths();
  const int m = n_range_bins();
  if (n < 2 || m < 2)
    throw std::invalid_argument("RadarScan: need at least 2 azimuths and 2 range bins");
  if (static_cast<int>(azimuths.size()) != n ||
      static_cast<int>(timestamps.size()) != n ||
      static_cast<int>(chirp_dir.size()) != n)
    throw std::invalid_argument("RadarScan: per-azimuth array length mismatch");
  if (!(range_resolution > 0.0))
    throw std::invalid_argument("RadarScan: range_resolution must be positive");
  constexpr double kSpanTolerance = 1e-6;
  if (azimuths.back() - azimuths.front() >= kTwoPi + kSpanTolerance)
    throw std::invalid_argument("RadarScan: azimuths span more than one revolution");
  for (int i = 1; i < n; ++i) {
    if (!(azimuths[i] > azimuths[i - 1]))
      throw std::invalid_argument("RadarScan: azimuths not strictly increasing");
    if (!(timestamps[i] > timestamps[i - 1]))
      throw std::invalid_argument("RadarScan: timestamps not strictly increasing");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const float v = intensity(i, j);
      if (!std::isfinite(v) || v < 0.0f)
        throw std::invalid_argument("RadarScan: intensities must be finite and >= 0");
    }
}

bool GyroSeries::covers(double t0, double t1) const {
  return !empty() && timestamps.front() <= t0 && timestamps.back() >= t1;
}

double GyroSeries::raw_rate_at(double t) const {
  if (empty() || t < timestamps.front() || t > timestamps.back())
    throw std::out_of_range("GyroSeries: query outside coverage");
  const auto it = std::upper_bound(timestamps.begin(), timestamps.end(), t);
  if (it == timestamps.begin()) return rates.front();
  if (it == timestamps.end()) return rates.back();
  const std::size_t i = static_cast<std::size_t>(it - timestamps.begin()) - 1;
  const double h = timestamps[i + 1] - timestamps[i];
  const double a = (t - timestamps[i]) / h;
  return (1.0 - a) * rates[i] + a * rates[i + 1];
}

void GyroSeries::validate() const {
  if (timestamps.size() != rates.size())
    throw std::invalid_argument("GyroSeries: timestamp/rate length mismatch");
  for (std::size_t i = 1; i < timestamps.size(); ++i)
    if (!(timestamps[i] > timestamps[i - 1]))
      throw std::invalid_argument("GyroSeries: timestamps not strictly increasing");
}

Mode mode_from_string(const std::string& name) {
  if (name == "gd" || name == "GD") return Mode::kGD;
  if (name == "g" || name == "G") return Mode::kG;
  if (name == "d" || name == "D") return Mode::kD;
  throw std::invalid_argument("unknown mode: " + name);
}

std::string mode_to_string(Mode mode) {
  switch (mode) {
    case Mode::kGD: return "gd";
    case Mode::kG: return "g";
    case Mode::kD: return "d";
  }
  return "gd";
}

void Config::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("Config: gamma must be in [0, 1]");
  if (!(map_resolution > 0.0) || !(map_extent > 0.0))
    throw std::invalid_argument("Config: map scales must be positive");
  if (!(gp_lengthscale_az > 0.0) || !(gp_lengthscale_range > 0.0) ||
      !(gp_noise > 0.0))
    throw std::invalid_argument("Config: GP parameters must be positive");
  if (gp_neighborhood_u < 1 || gp_neighborhood_u % 2 == 0 ||
      gp_neighborhood_v < 1 || gp_neighborhood_v % 2 == 0)
    throw std::invalid_argument("Config: GP neighborhood sizes must be odd");
  if (!(step_init > 0.0) || !(step_min > 0.0) || max_iters < 1)
    throw std::invalid_argument("Config: solver parameters out of range");
  if (!(beta != 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("Config: beta must be finite and nonzero");
  if (filter_blur_sigma < 0.0)
    throw std::invalid_argument("Config: filter_blur_sigma must be >= 0");
}

}  // namespace dro
