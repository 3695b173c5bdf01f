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

#include "dro/doppler_objective.hpp"

namespace dro {

double row_query(const ImageF& image, int row, double r,
                 double range_resolution) {
  return row_query_grad(image, row, r, range_resolution).value;
}

RowSample row_query_grad(const ImageF& image, int row, double r,
                         double range_resolution) {
  RowSample out;
  const int m = static_cast<int>(image.cols());
  const double u = r / range_resolution;
  if (!(u >= 0.0 && u <= m - 1)) return out;
  const int j0 = std::min(static_cast<int>(u), m - 2);
  const double f = u - j0;
  const double v0 = image(row, j0);
  const double v1 = image(row, j0 + 1);
  out.value = (1.0 - f) * v0 + f * v1;
  out.ddr = (v1 - v0) / range_resolution;
  return out;
}

DopplerObjectiveResult doppler_objective(const ChirpImages& images,
                                         const ScanState& state,
                                         const MotionModel& model,
                                         const Config& config,
                                         const ImageF* weights,
                                         double vy_bias) {
  (void)model;  // v at tau_n rotated back to the body frame is v_body itself
  if (images.up.rows() != images.down.rows() ||
      images.up.cols() != images.down.cols())
    throw std::invalid_argument("doppler_objective: image shape mismatch");

  const int n = static_cast<int>(images.down.rows());
  const int m = static_cast<int>(images.down.cols());
  const Vec2 v_doppler = state.v_body - Vec2(0.0, vy_bias);

  DopplerObjectiveResult out;
  for (int i = 0; i < n; ++i) {
    const Vec2 beam(std::cos(images.azimuths[i]), std::sin(images.azimuths[i]));
    const double dshift = config.beta * beam.dot(v_doppler);
    Vec2 row_grad = Vec2::Zero();
    for (int j = 0; j < m; ++j) {
      const double down = images.down(i, j);
      if (down == 0.0) continue;
      const double w = weights ? (*weights)(i, j) * down : down;
      const RowSample s = row_query_grad(images.up, i,
                                         j * images.range_resolution + dshift,
                                         images.range_resolution);
      out.score += w * s.value;
      row_grad += (w * s.ddr * config.beta) * beam;
    }
    out.grad_v += row_grad;
  }
  return out;
}

}  // namespace dro
