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

#include "dro/gp_infill.hpp"

#include <cmath>
#include <iostream>

namespace dro {

double se_kernel(double d_az, double d_range, double lengthscale_az,
                 double lengthscale_range) {
  const double a = d_az / lengthscale_az;
  const double r = d_range / lengthscale_range;
  return std::exp(-0.5 * (a * a + r * r));
}

KernelStencil build_stencil(double lengthscale_az, double lengthscale_range,
                            int neighborhood_u, int neighborhood_v,
                            double noise) {
  if (neighborhood_u < 1 || neighborhood_u % 2 == 0 || neighborhood_v < 1 ||
      neighborhood_v % 2 == 0)
    throw std::invalid_argument("build_stencil: neighborhood sizes must be odd");
  if (!(noise > 0.0))
    throw std::invalid_argument("build_stencil: noise sigma must be positive");
  if (!(lengthscale_az > 0.0) || !(lengthscale_range > 0.0))
    throw std::invalid_argument("build_stencil: lengthscales must be positive");

  const int u = neighborhood_u;
  const int v = neighborhood_v;
  const int p = u * v;

  // Data point coordinates relative to the inference pixel.
  std::vector<Vec2> points(p);
  for (int i = 0; i < u; ++i)
    for (int j = 0; j < v; ++j)
      points[i * v + j] = Vec2(KernelStencil::row_offset(i, u),
                               KernelStencil::col_offset(j, v));

  Eigen::MatrixXd gram(p, p);
  Eigen::VectorXd k_star(p);
  for (int a = 0; a < p; ++a) {
    k_star(a) = se_kernel(points[a].x(), points[a].y(), lengthscale_az,
                          lengthscale_range);
    for (int b = 0; b < p; ++b)
      gram(a, b) = se_kernel(points[a].x() - points[b].x(),
                             points[a].y() - points[b].y(), lengthscale_az,
                             lengthscale_range);
  }
  gram.diagonal().array() += noise * noise;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("build_stencil: kernel system is numerically singular");
  const Eigen::VectorXd w = ldlt.solve(k_star);
  if (!w.allFinite())
    throw std::runtime_error("build_stencil: kernel solve produced non-finite weights");

  KernelStencil stencil;
  stencil.weights = Eigen::Map<const Eigen::MatrixXd>(w.data(), v, u).transpose();
  stencil.neighborhood_u = u;
  stencil.neighborhood_v = v;
  stencil.lengthscale_az = lengthscale_az;
  stencil.lengthscale_range = lengthscale_range;
  stencil.noise = noise;
  return stencil;
}

namespace {

/// Fills the missing rows of `image` (those not in `observed`, which holds
/// the observed full-grid row indices in increasing order) by applying the
/// stencil over the observed rows, cyclic in azimuth, truncated in range.
void infill_missing_rows(ImageF& image, const std::vector<int>& observed,
                         const KernelStencil& stencil) {
  const int n = static_cast<int>(image.rows());
  const int m = static_cast<int>(image.cols());
  const int k = static_cast<int>(observed.size());
  const int u = stencil.neighborhood_u;
  const int v = stencil.neighborhood_v;
  const int half_u = (u - 1) / 2;

  std::vector<char> is_observed(n, 0);
  std::vector<int> compact_index(n, -1);
  for (int i = 0; i < k; ++i) {
    is_observed[observed[i]] = 1;
    compact_index[observed[i]] = i;
  }

  for (int row = 0; row < n; ++row) {
    if (is_observed[row]) continue;
    // Tap i sits at the observed row offset 2*(i - half_u) - 1 from `row`;
    // the tap at offset -1 is the observed row just below.
    const int below = (row - 1 + n) % n;
    const int base = compact_index[below];
    for (int col = 0; col < m; ++col) {
      double acc = 0.0;
      double norm = 0.0;
      for (int i = 0; i < u; ++i) {
        const int src_row = observed[((base + i - half_u) % k + k) % k];
        for (int j = 0; j < v; ++j) {
          const int src_col = col + KernelStencil::col_offset(j, v);
          if (src_col < 0 || src_col >= m) continue;
          const double w = stencil.weights(i, j);
          acc += w * image(src_row, src_col);
          norm += w;
        }
      }
      image(row, col) =
          std::abs(norm) > 1e-12 ? static_cast<float>(acc / norm) : 0.0f;
    }
  }
}

}  // namespace

ChirpImages split_and_infill(const RadarScan& scan, const KernelStencil& stencil) {
  int n = scan.n_azimuths();
  const int m = scan.n_range_bins();
  if (!scan.alternating_chirps())
    throw std::invalid_argument(
        "split_and_infill: chirp directions must alternate (triangular pattern)");
  if (n % 2 != 0) {
    std::cerr << "split_and_infill: odd azimuth count, dropping last row\n";
    --n;
  }

  ChirpImages out;
  out.azimuths.assign(scan.azimuths.begin(), scan.azimuths.begin() + n);
  out.timestamps.assign(scan.timestamps.begin(), scan.timestamps.begin() + n);
  out.chirp_dir.assign(scan.chirp_dir.begin(), scan.chirp_dir.begin() + n);
  out.range_resolution = scan.range_resolution;
  out.up = ImageF::Zero(n, m);
  out.down = ImageF::Zero(n, m);

  std::vector<int> up_rows, down_rows;
  for (int row = 0; row < n; ++row) {
    if (scan.chirp_dir[row] == ChirpDir::kUp) {
      out.up.row(row) = scan.intensity.row(row);
      up_rows.push_back(row);
    } else {
      out.down.row(row) = scan.intensity.row(row);
      down_rows.push_back(row);
    }
  }

  infill_missing_rows(out.up, up_rows, stencil);
  infill_missing_rows(out.down, down_rows, stencil);
  return out;
}

ImageF filter_rows(const ImageF& image, double blur_sigma) {
  const int n = static_cast<int>(image.rows());
  const int m = static_cast<int>(image.cols());
  ImageF out(n, m);

  // Normalized blur kernel, truncated at 4 sigma.
  std::vector<double> kernel;
  int radius = 0;
  if (blur_sigma > 0.0) {
    radius = static_cast<int>(std::ceil(4.0 * blur_sigma));
    kernel.resize(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
      kernel[i + radius] = std::exp(-0.5 * i * i / (blur_sigma * blur_sigma));
      sum += kernel[i + radius];
    }
    for (double& w : kernel) w /= sum;
  }

  std::vector<double> row(m), blurred(m);
  for (int r = 0; r < n; ++r) {
    double mean = 0.0;
    for (int c = 0; c < m; ++c) mean += image(r, c);
    mean /= m;
    double var = 0.0;
    for (int c = 0; c < m; ++c) {
      const double d = image(r, c) - mean;
      var += d * d;
    }
    const double threshold = 2.0 * std::sqrt(var / m);

    double peak = 0.0;
    for (int c = 0; c < m; ++c) {
      row[c] = image(r, c) < threshold ? 0.0 : image(r, c);
      peak = std::max(peak, row[c]);
    }
    if (peak <= 0.0) {
      out.row(r).setZero();
      continue;
    }
    for (int c = 0; c < m; ++c) row[c] /= peak;

    if (radius > 0) {
      for (int c = 0; c < m; ++c) {
        double acc = 0.0;
        const int lo = std::max(0, c - radius);
        const int hi = std::min(m - 1, c + radius);
        for (int s = lo; s <= hi; ++s) acc += kernel[s - c + radius] * row[s];
        blurred[c] = acc;
      }
    } else {
      blurred = row;
    }

    for (int c = 0; c < m; ++c)
      out(r, c) = static_cast<float>(blurred[c] * blurred[c] * blurred[c]);
  }
  return out;
}

}  // namespace dro
