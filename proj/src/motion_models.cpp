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

#include "dro/motion_models.hpp"

#include <algorithm>

namespace dro {

RotIntegral rot_time_integral(double omega, double dt) {
  // A(dt) = [[ic, is], [-is, ic]] with ic = sin(w dt)/w, is = (1-cos(w dt))/w.
  // 1 - cos is evaluated as 2 sin^2(th/2) and small angles switch to the
  // series so none of the terms cancel catastrophically.
  const double th = omega * dt;
  double ic, is, dic, dis;
  if (std::abs(th) < 1e-3) {
    const double w2 = omega * omega;
    const double dt2 = dt * dt;
    ic = dt * (1.0 - th * th / 6.0 + th * th * th * th / 120.0);
    is = omega * dt2 * (0.5 - th * th / 24.0 + th * th * th * th / 720.0);
    dic = -omega * dt2 * dt * (1.0 / 3.0 - th * th / 30.0);
    dis = dt2 * (0.5 - th * th / 8.0 + th * th * th * th / 144.0);
  } else {
    const double s = std::sin(th);
    const double half = std::sin(0.5 * th);
    const double one_minus_c = 2.0 * half * half;
    ic = s / omega;
    is = one_minus_c / omega;
    dic = dt * std::cos(th) / omega - s / (omega * omega);
    dis = dt * s / omega - one_minus_c / (omega * omega);
  }
  RotIntegral out;
  out.value << ic, is, -is, ic;
  out.d_omega << dic, dis, -dis, dic;
  return out;
}

namespace {

/// Exact integral of the linear rate segment from the segment start to dt.
double segment_theta(double rate0, double rate1, double h, double dt) {
  return rate0 * dt + (rate1 - rate0) * dt * dt / (2.0 * h);
}

}  // namespace

GyroPreintModel::GyroPreintModel(const GyroSeries& gyro, double t1, double t_end) {
  if (!(t_end > t1))
    throw std::invalid_argument("GyroPreintModel: empty interval");
  if (!gyro.covers(t1, t_end))
    throw std::out_of_range("GyroPreintModel: gyro does not cover the scan interval");

  // Knots: the interval endpoints plus every gyro stamp strictly inside.
  auto& times = cache_.knot_times;
  times.push_back(t1);
  for (std::size_t i = 0; i < gyro.timestamps.size(); ++i) {
    const double t = gyro.timestamps[i];
    if (t > t1 && t < t_end) times.push_back(t);
  }
  times.push_back(t_end);

  auto& rates = cache_.knot_rates;
  rates.reserve(times.size());
  for (const double t : times) rates.push_back(gyro.raw_rate_at(t) - gyro.bias);

  auto& thetas = cache_.knot_thetas;
  auto& integrals = cache_.knot_pos_integrals;
  thetas.assign(times.size(), 0.0);
  integrals.assign(times.size(), Mat2::Zero());
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double h = times[i + 1] - times[i];
    thetas[i + 1] = thetas[i] + 0.5 * (rates[i] + rates[i + 1]) * h;
    // Simpson on R(theta(s)) with the exact quadratic theta at the midpoint.
    const double theta_mid =
        thetas[i] + segment_theta(rates[i], rates[i + 1], h, 0.5 * h);
    integrals[i + 1] = integrals[i] +
                       (h / 6.0) * (angle_to_rot(thetas[i]) +
                                    4.0 * angle_to_rot(theta_mid) +
                                    angle_to_rot(thetas[i + 1]));
  }
}

std::size_t GyroPreintModel::segment_of(double t) const {
  const auto& times = cache_.knot_times;
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
  return std::min(i, times.size() - 2);
}

double GyroPreintModel::theta(double t) const {
  const std::size_t i = segment_of(t);
  const double h = cache_.knot_times[i + 1] - cache_.knot_times[i];
  const double dt = t - cache_.knot_times[i];
  return cache_.knot_thetas[i] +
         segment_theta(cache_.knot_rates[i], cache_.knot_rates[i + 1], h, dt);
}

Mat2 GyroPreintModel::pos_integral(double t) const {
  const std::size_t i = segment_of(t);
  const double h = cache_.knot_times[i + 1] - cache_.knot_times[i];
  const double a = (t - cache_.knot_times[i]) / h;
  return (1.0 - a) * cache_.knot_pos_integrals[i] +
         a * cache_.knot_pos_integrals[i + 1];
}

double GyroPreintModel::mean_rate() const {
  const double span = cache_.knot_times.back() - cache_.knot_times.front();
  return cache_.knot_thetas.back() / span;
}

double theta_const(double omega, double t, double t1) {
  return omega * (t - t1);
}

double theta_preint(const GyroSeries& gyro, double t, double t1) {
  if (t == t1) return 0.0;
  return GyroPreintModel(gyro, t1, t).theta(t);
}

Vec2 pos_at(const ScanState& state, const MotionModel& model, double t) {
  return state.anchor.position +
         state.anchor.rotation * (model.pos_integral(t) * state.v_body);
}

Vec2 vel_world(const ScanState& state, const MotionModel& model, double t) {
  return state.anchor.rotation * (model.rot(t) * state.v_body);
}

}  // namespace dro
