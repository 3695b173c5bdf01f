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
 * \file gp_infill.hpp
 * \brief Chirp splitting and Gaussian-process infill of the missing rows.
 *
 * A triangular-pattern scan alternates up- and down-chirps, so the up image
 * only observes every second azimuth row. The missing rows are inferred by
 * GP regression with a squared-exponential kernel over (azimuth index,
 * range bin) grid coordinates. Because the observed rows form a regular
 * pattern, the GP solve k(x*,X)(K(X,X)+s^2 I)^-1 is identical for every
 * inference pixel and reduces to one precomputed convolution stencil.
 *
 * Stencil geometry: for a missing row, the U nearest observed rows sit at
 * signed azimuth offsets 2*(i - (U-1)/2) - 1 for tap i (so U = 3 uses
 * offsets {-3, -1, +1}), and the V column taps are centred on the inference
 * column. Rows wrap cyclically across the 0/2pi seam; columns truncate at
 * the image edge. Inferred values are divided by the stencil response to an
 * all-ones input so a constant signal is reproduced exactly.
 */
#pragma once

#include <vector>

#include "dro/core_types.hpp"

namespace dro {

struct KernelStencil {
  Eigen::MatrixXd weights;  ///< U x V GP inference weights
  int neighborhood_u = 0;
  int neighborhood_v = 0;
  double lengthscale_az = 0.0;
  double lengthscale_range = 0.0;
  double noise = 0.0;

  /// Azimuth offset (full-grid rows) of tap row i.
  static int row_offset(int i, int u) { return 2 * (i - (u - 1) / 2) - 1; }
  /// Column offset of tap column j.
  static int col_offset(int j, int v) { return j - (v - 1) / 2; }
};

/// Squared-exponential kernel over grid offsets.
double se_kernel(double d_az, double d_range, double lengthscale_az,
                 double lengthscale_range);

/// Precomputes the GP inference weights for the every-second-row geometry.
/// Throws std::invalid_argument for even neighborhood sizes or sigma <= 0,
/// and std::runtime_error if the regularized kernel system cannot be solved.
KernelStencil build_stencil(double lengthscale_az, double lengthscale_range,
                            int neighborhood_u, int neighborhood_v,
                            double noise);

/// Up/down chirp images on the full azimuth grid of the source scan.
/// Rows observed by the corresponding chirp hold the raw data; the others
/// are GP-inferred.
struct ChirpImages {
  ImageF up;
  ImageF down;
  std::vector<double> azimuths;
  std::vector<double> timestamps;
  std::vector<ChirpDir> chirp_dir;
  double range_resolution = 0.0;
};

/// Splits a triangular scan by chirp direction and infills the missing rows
/// with the stencil. Throws std::invalid_argument when the chirp pattern
/// does not alternate. An odd trailing row is dropped with a warning.
ChirpImages split_and_infill(const RadarScan& scan, const KernelStencil& stencil);

/// Per-azimuth intensity filter: nullify bins below twice the row standard
/// deviation, scale the row maximum to one, Gaussian-blur along the row,
/// then cube. Rows entirely at or below the threshold become all zero.
ImageF filter_rows(const ImageF& image, double blur_sigma);

}  // namespace dro
