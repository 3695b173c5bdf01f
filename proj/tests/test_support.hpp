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

// Shared helpers for the test suites: deterministic random inputs, the
// independent dense-GP oracle, numerical quadrature, and small scene
// factories. Everything here is test-only and must stay independent of the
// implementation path it cross-checks.
#pragma once

#include <functional>
#include <random>

#include "dro/core_types.hpp"
#include "dro/gp_infill.hpp"
#include "dro/registration.hpp"
#include "dro/simulator.hpp"

namespace dro::test {

/// Smooth random map: a sum of wide Gaussian blobs sampled on the grid.
LocalMap random_blob_map(std::mt19937_64& rng, int side, double resolution,
                         int n_blobs, double blob_sigma);

/// Map whose samples lie on a global affine function a + b.x * x + b.y * y;
/// bilinear interpolation reproduces it exactly, so objective gradients have
/// no interpolation kinks anywhere.
LocalMap affine_map(double a, const Vec2& b, int side, double resolution);

/// Small random scan with sparse nonzero bins and the requested chirp layout.
RadarScan random_scan(std::mt19937_64& rng, int n_azimuths, int n_range_bins,
                      double range_resolution, double t0, double duration,
                      bool triangular, double fill_fraction);

/// Composite-Simpson quadrature of f over [a, b].
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals);

/// Dense GP inference at one pixel: builds the kernel system over the given
/// data points and solves it directly (independent oracle for the stencil).
double dense_gp_infer(const std::vector<Vec2>& points,
                      const std::vector<double>& values, double l_az,
                      double l_range, double noise, bool normalize);

/// Per-pixel dense-GP infill of the missing rows of a chirp-split image
/// over the documented U x V neighborhood geometry (U nearest observed rows
/// at odd offsets, V centred columns). Shares only the point layout with the
/// stencil path; the GP system is rebuilt and solved densely per pixel.
ImageF dense_gp_infill(const ImageF& observed_image,
                       const std::vector<int>& observed_rows, int u, int v,
                       double l_az, double l_range, double noise);

/// Randomized analytic-vs-central-difference gradient comparison. Each case
/// draws a map/scan/state; rel_err is |fd - grad| / |grad| per case.
struct GradCheckSummary {
  int cases = 0;
  double max_rel_err = 0.0;
};
GradCheckSummary intensity_gradient_suite(int n_cases, std::uint64_t seed);
GradCheckSummary doppler_gradient_suite(int n_cases, std::uint64_t seed);

/// Ring of reflectors around the given centre (well-spread azimuths).
std::vector<Reflector> reflector_ring(const Vec2& centre, double radius,
                                      int count, double reflectivity);

/// Scene with a single constant-velocity segment and the given reflectors.
Scene constant_velocity_scene(const std::vector<Reflector>& reflectors,
                              const Vec2& v_body, double omega,
                              double duration);

}  // namespace dro::test
