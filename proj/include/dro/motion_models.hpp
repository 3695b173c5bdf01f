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
 * \file motion_models.hpp
 * \brief Continuous trajectory functions over one scan interval.
 *
 * A motion model provides the accumulated heading theta(t) relative to the
 * scan anchor time t1, and the rotation time integral
 *     A(t) = \int_{t1}^{t} R(theta(s)) ds,
 * so the anchor-relative position under the constant body velocity model is
 * A(t) * v_body. Two variants exist: constant angular rate (gyro-less) and
 * gyro preintegration with a piece-wise linear rate.
 */
#pragma once

#include <memory>
#include <vector>

#include "dro/core_types.hpp"

namespace dro {

/// Closed-form \int_0^dt R(omega * s) ds and its omega-derivative.
/// Switches to a series expansion below |omega| = 1e-6 rad/s.
struct RotIntegral {
  Mat2 value;
  Mat2 d_omega;
};
RotIntegral rot_time_integral(double omega, double dt);

class MotionModel {
 public:
  virtual ~MotionModel() = default;
  /// Accumulated heading since the anchor time (radians, unnormalized).
  virtual double theta(double t) const = 0;
  /// A(t) = integral of R(theta(s)) from the anchor time to t.
  virtual Mat2 pos_integral(double t) const = 0;
  /// True when the model exposes derivatives w.r.t. a rate variable.
  virtual bool has_omega() const { return false; }
  virtual double dtheta_domega(double t) const { (void)t; return 0.0; }
  virtual Mat2 dpos_integral_domega(double t) const { (void)t; return Mat2::Zero(); }

  Mat2 rot(double t) const { return angle_to_rot(theta(t)); }
};

/// theta(t) = omega * (t - t1); A(t) analytic.
class ConstOmegaModel final : public MotionModel {
 public:
  ConstOmegaModel(double omega, double t1) : omega_(omega), t1_(t1) {}

  double theta(double t) const override { return omega_ * (t - t1_); }
  Mat2 pos_integral(double t) const override {
    return rot_time_integral(omega_, t - t1_).value;
  }
  bool has_omega() const override { return true; }
  double dtheta_domega(double t) const override { return t - t1_; }
  Mat2 dpos_integral_domega(double t) const override {
    return rot_time_integral(omega_, t - t1_).d_omega;
  }

  double omega() const { return omega_; }

 private:
  double omega_;
  double t1_;
};

/// Knot arrays for gyro preintegration: cumulative heading (exact integral of
/// the linearly interpolated bias-corrected rate) and the cumulative rotation
/// time integral, accumulated per segment with Simpson's rule.
struct PreintCache {
  std::vector<double> knot_times;
  std::vector<double> knot_rates;   ///< bias-corrected rate at knots
  std::vector<double> knot_thetas;
  std::vector<Mat2> knot_pos_integrals;
};

/// Heading from gyro preintegration. theta is evaluated exactly within each
/// segment (quadratic in t); the matrix integral is interpolated linearly
/// between knots.
class GyroPreintModel final : public MotionModel {
 public:
  /// Builds the cache over [t1, t_end]; throws if the gyro does not cover it.
  GyroPreintModel(const GyroSeries& gyro, double t1, double t_end);

  double theta(double t) const override;
  Mat2 pos_integral(double t) const override;

  const PreintCache& cache() const { return cache_; }
  /// Mean angular rate over the cached interval.
  double mean_rate() const;

 private:
  /// Index of the segment containing t (clamped to the cached interval).
  std::size_t segment_of(double t) const;
  PreintCache cache_;
};

/// Heading integral of a constant rate: theta_const in the module contract.
double theta_const(double omega, double t, double t1);

/// Heading integral of the bias-corrected, linearly interpolated gyro rate.
double theta_preint(const GyroSeries& gyro, double t, double t1);

/// World position at t under the constant body velocity model.
Vec2 pos_at(const ScanState& state, const MotionModel& model, double t);

/// World velocity at t: R_W(t) * v_body.
Vec2 vel_world(const ScanState& state, const MotionModel& model, double t);

}  // namespace dro
