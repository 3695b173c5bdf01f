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

#include <gtest/gtest.h>

#include <random>

#include "dro/doppler_objective.hpp"
#include "test_support.hpp"

using namespace dro;

namespace {

ChirpImages blank_images(int n, int m, double resolution) {
  ChirpImages images;
  images.up = ImageF::Zero(n, m);
  images.down = ImageF::Zero(n, m);
  images.range_resolution = resolution;
  for (int i = 0; i < n; ++i) {
    images.azimuths.push_back(i * kTwoPi / n);
    images.timestamps.push_back(i * 0.25 / n);
    images.chirp_dir.push_back(i % 2 == 0 ? ChirpDir::kUp : ChirpDir::kDown);
  }
  return images;
}

}  // namespace

TEST(RowQuery, ExactBinAndMidpoint) {
  ChirpImages images = blank_images(2, 6, 0.5);
  images.up(0, 2) = 2.0f;
  images.up(0, 3) = 4.0f;
  EXPECT_DOUBLE_EQ(row_query(images.up, 0, 1.0, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(row_query(images.up, 0, 1.25, 0.5), 3.0);
}

TEST(RowQuery, OutOfRangeIsZero) {
  ChirpImages images = blank_images(2, 6, 0.5);
  images.up.setConstant(1.0f);
  EXPECT_EQ(row_query(images.up, 0, -0.1, 0.5), 0.0);
  EXPECT_EQ(row_query(images.up, 0, 2.6, 0.5), 0.0);
  const RowSample s = row_query_grad(images.up, 0, 3.0, 0.5);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(s.ddr, 0.0);
}

TEST(DopplerObjective, IdenticalImagesAtZeroVelocity) {
  std::mt19937_64 rng(61);
  ChirpImages images = blank_images(8, 16, 0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 16; ++j) {
      const float v = unit(rng) < 0.4 ? static_cast<float>(unit(rng)) : 0.0f;
      images.up(i, j) = v;
      images.down(i, j) = v;
    }
  ScanState state;  // v = 0
  const ConstOmegaModel model(0.0, 0.0);
  const auto result = doppler_objective(images, state, model, Config{});
  double expected = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 16; ++j)
      expected += static_cast<double>(images.down(i, j)) * images.up(i, j);
  EXPECT_NEAR(result.score, expected, 1e-12);
}

TEST(DopplerObjective, ZeroImagesGiveZeroScoreAndGradient) {
  const ChirpImages images = blank_images(8, 16, 0.5);
  ScanState state;
  state.v_body = Vec2(3.0, -1.0);
  const ConstOmegaModel model(0.1, 0.0);
  const auto result = doppler_objective(images, state, model, Config{});
  EXPECT_EQ(result.score, 0.0);
  EXPECT_EQ(result.grad_v.norm(), 0.0);
}

TEST(DopplerObjective, ShapeMismatchRejected) {
  ChirpImages images = blank_images(8, 16, 0.5);
  images.up = ImageF::Zero(8, 15);
  ScanState state;
  const ConstOmegaModel model(0.0, 0.0);
  EXPECT_THROW(doppler_objective(images, state, model, Config{}),
               std::invalid_argument);
}

TEST(DopplerObjective, GradientMatchesFiniteDifferences) {
  const auto summary = test::doppler_gradient_suite(30, 4091);
  EXPECT_EQ(summary.cases, 30);
  EXPECT_LT(summary.max_rel_err, 1e-4);
}

TEST(DopplerObjective, SwapImagesAndNegateBetaIsInvariant) {
  // O_d(up, down; beta) = O_d(down, up; -beta): the linear-interpolation
  // hat kernel is even, so the correlation identity holds exactly.
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> vel(-6.0, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    ChirpImages images = blank_images(8, 20, 0.4);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 20; ++j) {
        if (unit(rng) < 0.5) images.up(i, j) = static_cast<float>(unit(rng));
        if (unit(rng) < 0.5) images.down(i, j) = static_cast<float>(unit(rng));
      }
    ScanState state;
    state.v_body = Vec2(vel(rng), vel(rng));
    const ConstOmegaModel model(0.0, 0.0);

    Config config;
    config.beta = 0.25;
    const double score = doppler_objective(images, state, model, config).score;

    ChirpImages swapped = images;
    std::swap(swapped.up, swapped.down);
    Config negated = config;
    negated.beta = -config.beta;
    const double swapped_score =
        doppler_objective(swapped, state, model, negated).score;
    EXPECT_NEAR(score, swapped_score, 1e-9 * std::max(1.0, std::abs(score)));
  }
}

TEST(DopplerObjective, GridSweepArgmaxNearTruth) {
  // Simulated triangular scan at v = (10, 0): the v_x grid argmax of O_d
  // must land within 0.1 m/s of the truth (grid-search oracle).
  Scene scene = test::constant_velocity_scene(
      test::reflector_ring(Vec2(0.0, 0.0), 60.0, 24, 1.0), Vec2(10.0, 0.0),
      0.0, 1.0);
  const RadarScan scan = synth_scan(scene, 0.25, 7);
  const KernelStencil stencil = build_stencil(1.0, 1.5, 5, 5, 0.1);
  ChirpImages images = split_and_infill(scan, stencil);
  images.up = filter_rows(images.up, 1.0);
  images.down = filter_rows(images.down, 1.0);

  Config config;
  config.beta = scene.beta;
  const ConstOmegaModel model(0.0, scan.timestamps.front());

  double best_v = 0.0, best_score = -1.0;
  for (double vx = 8.0; vx <= 12.0; vx += 0.02) {
    ScanState state;
    state.v_body = Vec2(vx, 0.0);
    const double score = doppler_objective(images, state, model, config).score;
    if (score > best_score) {
      best_score = score;
      best_v = vx;
    }
  }
  EXPECT_NEAR(best_v, 10.0, 0.1);
}
