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

#include "dro/registration.hpp"

namespace dro {

namespace {

struct CellIndex {
  int row0, col0;
  double fr, fc;  // fractional offsets within the cell
  bool valid;
};

CellIndex locate(const LocalMap& map, double x, double y) {
  CellIndex cell{0, 0, 0.0, 0.0, false};
  const double u = (x - map.origin.x()) / map.resolution;
  const double v = (y - map.origin.y()) / map.resolution;
  const int w = map.width();
  const int h = map.height();
  if (!(u >= 0.0 && u <= w - 1 && v >= 0.0 && v <= h - 1)) return cell;
  cell.col0 = std::min(static_cast<int>(u), w - 2);
  cell.row0 = std::min(static_cast<int>(v), h - 2);
  cell.fc = u - cell.col0;
  cell.fr = v - cell.row0;
  cell.valid = true;
  return cell;
}

}  // namespace

double bilinear(const LocalMap& map, double x, double y) {
  const CellIndex c = locate(map, x, y);
  if (!c.valid) return 0.0;
  const auto& img = map.image;
  const double v00 = img(c.row0, c.col0);
  const double v01 = img(c.row0, c.col0 + 1);
  const double v10 = img(c.row0 + 1, c.col0);
  const double v11 = img(c.row0 + 1, c.col0 + 1);
  return (1.0 - c.fr) * ((1.0 - c.fc) * v00 + c.fc * v01) +
         c.fr * ((1.0 - c.fc) * v10 + c.fc * v11);
}

BilinearSample bilinear_grad(const LocalMap& map, double x, double y) {
  BilinearSample out;
  const CellIndex c = locate(map, x, y);
  if (!c.valid) return out;
  const auto& img = map.image;
  const double v00 = img(c.row0, c.col0);
  const double v01 = img(c.row0, c.col0 + 1);
  const double v10 = img(c.row0 + 1, c.col0);
  const double v11 = img(c.row0 + 1, c.col0 + 1);
  out.value = (1.0 - c.fr) * ((1.0 - c.fc) * v00 + c.fc * v01) +
              c.fr * ((1.0 - c.fc) * v10 + c.fc * v11);
  out.ddx = ((1.0 - c.fr) * (v01 - v00) + c.fr * (v11 - v10)) / map.resolution;
  out.ddy = ((1.0 - c.fc) * (v10 - v00) + c.fc * (v11 - v01)) / map.resolution;
  return out;
}

std::vector<AzimuthFrame> azimuth_frames(const ScanGeometry& geometry,
                                         const ScanState& state,
                                         const MotionModel& model, double beta,
                                         double target_time, double vy_bias) {
  const auto& azimuths = *geometry.azimuths;
  const auto& times = *geometry.timestamps;
  const auto& chirps = *geometry.chirp_dir;
  const std::size_t n = azimuths.size();

  const Mat2 rot_target_t = model.rot(target_time).transpose();
  const Mat2 pos_int_target = model.pos_integral(target_time);
  const Vec2 v_doppler = state.v_body - Vec2(0.0, vy_bias);

  std::vector<AzimuthFrame> frames(n);
  for (std::size_t i = 0; i < n; ++i) {
    AzimuthFrame& f = frames[i];
    f.beam = Vec2(std::cos(azimuths[i]), std::sin(azimuths[i]));
    f.rot = rot_target_t * model.rot(times[i]);
    f.pos = rot_target_t *
            ((model.pos_integral(times[i]) - pos_int_target) * state.v_body);
    f.dshift = beta * f.beam.dot(v_doppler);
    f.chirp_sign = chirps[i] == ChirpDir::kUp ? -1.0 : 1.0;
  }
  return frames;
}

WarpedPoints warp_points(const ScanGeometry& geometry, const ScanState& state,
                         const MotionModel& model, const Config& config,
                         double target_time, double vy_bias) {
  const int n = static_cast<int>(geometry.azimuths->size());
  const int m = geometry.n_range_bins;
  const auto frames =
      azimuth_frames(geometry, state, model, config.beta, target_time, vy_bias);

  WarpedPoints out;
  out.x.resize(n, m);
  out.y.resize(n, m);
  for (int i = 0; i < n; ++i) {
    const AzimuthFrame& f = frames[i];
    for (int j = 0; j < m; ++j) {
      const double r = j * geometry.range_resolution +
                       0.5 * f.chirp_sign * f.dshift;
      const Vec2 p = f.rot * (r * f.beam) + f.pos;
      out.x(i, j) = p.x();
      out.y(i, j) = p.y();
    }
  }
  return out;
}

IntensityObjectiveResult intensity_objective(
    const ImageF& intensity, const ScanGeometry& geometry, const LocalMap& map,
    const ScanState& state, const MotionModel& model, const Config& config,
    const ImageF* weights, double vy_bias) {
  const int n = static_cast<int>(intensity.rows());
  const int m = static_cast<int>(intensity.cols());
  const auto& times = *geometry.timestamps;
  const double t1 = times.front();
  const auto frames =
      azimuth_frames(geometry, state, model, config.beta, t1, vy_bias);
  const bool with_omega = model.has_omega();
  const Mat2 gen = so2_generator();

  IntensityObjectiveResult out;
  for (int i = 0; i < n; ++i) {
    const AzimuthFrame& f = frames[i];
    // d z / d v: the Doppler shift moves the range along the rotated beam,
    // and the position integral scales linearly with the body velocity.
    const Vec2 rotated_beam = f.rot * f.beam;
    const Mat2 dz_dv =
        (0.5 * f.chirp_sign * config.beta) * rotated_beam * f.beam.transpose() +
        model.pos_integral(times[i]);
    Mat2 drot_domega = Mat2::Zero();
    Vec2 dpos_domega = Vec2::Zero();
    if (with_omega) {
      drot_domega = f.rot * gen * model.dtheta_domega(times[i]);
      dpos_domega = model.dpos_integral_domega(times[i]) * state.v_body;
    }
    for (int j = 0; j < m; ++j) {
      const double value = intensity(i, j);
      if (value == 0.0f) continue;
      const double w = weights ? (*weights)(i, j) * value : value;
      const double r =
          j * geometry.range_resolution + 0.5 * f.chirp_sign * f.dshift;
      const Vec2 local = r * f.beam;
      const Vec2 z = f.rot * local + f.pos;
      const BilinearSample s = bilinear_grad(map, z.x(), z.y());
      if (s.value == 0.0 && s.ddx == 0.0 && s.ddy == 0.0) continue;
      out.score += w * s.value;
      const Vec2 grad_map(s.ddx, s.ddy);
      out.grad_v += w * (dz_dv.transpose() * grad_map);
      if (with_omega)
        out.grad_omega += w * grad_map.dot(drot_domega * local + dpos_domega);
    }
  }
  return out;
}

LocalMap make_empty_map(const Config& config, double frame_time) {
  LocalMap map;
  const int side =
      static_cast<int>(std::round(config.map_extent / config.map_resolution)) + 1;
  map.image = ImageF::Zero(side, side);
  map.resolution = config.map_resolution;
  map.origin = Vec2(-0.5 * config.map_extent, -0.5 * config.map_extent);
  map.frame_time = frame_time;
  return map;
}

ImageF rasterize_scan(const ImageF& intensity, const ScanGeometry& geometry,
                      const ScanState& state, const MotionModel& model,
                      const Config& config, double target_time,
                      double vy_bias) {
  const LocalMap shape = make_empty_map(config, target_time);
  const int h = shape.height();
  const int w = shape.width();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(h, w);
  Eigen::MatrixXd wsum = Eigen::MatrixXd::Zero(h, w);

  const int n = static_cast<int>(intensity.rows());
  const int m = static_cast<int>(intensity.cols());
  const auto frames = azimuth_frames(geometry, state, model, config.beta,
                                     target_time, vy_bias);
  for (int i = 0; i < n; ++i) {
    const AzimuthFrame& f = frames[i];
    for (int j = 0; j < m; ++j) {
      const double value = intensity(i, j);
      if (value == 0.0f) continue;
      const double r =
          j * geometry.range_resolution + 0.5 * f.chirp_sign * f.dshift;
      const Vec2 z = f.rot * (r * f.beam) + f.pos;
      const double u = (z.x() - shape.origin.x()) / shape.resolution;
      const double v = (z.y() - shape.origin.y()) / shape.resolution;
      const int col0 = static_cast<int>(std::floor(u));
      const int row0 = static_cast<int>(std::floor(v));
      const double fc = u - col0;
      const double fr = v - row0;
      const double w00 = (1.0 - fr) * (1.0 - fc);
      const double w01 = (1.0 - fr) * fc;
      const double w10 = fr * (1.0 - fc);
      const double w11 = fr * fc;
      auto deposit = [&](int row, int col, double weight) {
        if (row < 0 || row >= h || col < 0 || col >= w || weight <= 0.0) return;
        acc(row, col) += weight * value;
        wsum(row, col) += weight;
      };
      deposit(row0, col0, w00);
      deposit(row0, col0 + 1, w01);
      deposit(row0 + 1, col0, w10);
      deposit(row0 + 1, col0 + 1, w11);
    }
  }

  ImageF out = ImageF::Zero(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      if (wsum(r, c) > 0.0)
        out(r, c) = static_cast<float>(acc(r, c) / wsum(r, c));
  return out;
}

LocalMap update_map(const LocalMap& map, const ImageF& intensity,
                    const ScanGeometry& geometry, const ScanState& state,
                    const MotionModel& model, const Config& config,
                    double target_time, double vy_bias) {
  LocalMap next = make_empty_map(config, target_time);
  const ImageF splat = rasterize_scan(intensity, geometry, state, model,
                                      config, target_time, vy_bias);
  if (map.empty()) {
    next.image = splat;
    return next;
  }

  // Coordinates in the old frame of a point given in the new (target) frame.
  const Mat2 rot_rel = model.rot(target_time);
  const Vec2 pos_rel = model.pos_integral(target_time) * state.v_body;
  const int h = next.height();
  const int w = next.width();
  const float keep = static_cast<float>(1.0 - config.gamma);
  const float gain = static_cast<float>(config.gamma);
  for (int r = 0; r < h; ++r) {
    const double y = next.origin.y() + r * next.resolution;
    for (int c = 0; c < w; ++c) {
      const double x = next.origin.x() + c * next.resolution;
      const Vec2 old_coords = rot_rel * Vec2(x, y) + pos_rel;
      const float resampled =
          static_cast<float>(bilinear(map, old_coords.x(), old_coords.y()));
      next.image(r, c) = keep * resampled + gain * splat(r, c);
    }
  }
  return next;
}

}  // namespace dro
