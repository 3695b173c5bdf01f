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

#include <filesystem>
#include <fstream>
#include <random>

#include "dro/core_types.hpp"
#include "dro/dataset_io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace dro;

TEST(AngleToRot, IdentityAtZero) {
  EXPECT_TRUE(angle_to_rot(0.0).isApprox(Mat2::Identity(), 1e-15));
}

TEST(AngleToRot, QuarterTurnLayout) {
  // [[0, 1], [-1, 0]]: +sin in the top-right entry.
  const Mat2 r = angle_to_rot(kPi / 2.0);
  EXPECT_NEAR(r(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(r(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(r(1, 0), -1.0, 1e-15);
  EXPECT_NEAR(r(1, 1), 0.0, 1e-15);
}

TEST(AngleToRot, InverseSymmetry) {
  const Mat2 composed = angle_to_rot(0.731) * angle_to_rot(-0.731);
  EXPECT_TRUE(composed.isApprox(Mat2::Identity(), 1e-12));
}

TEST(AngleToRot, RejectsNonFinite) {
  EXPECT_THROW(angle_to_rot(std::nan("")), std::invalid_argument);
  EXPECT_THROW(angle_to_rot(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

TEST(AngleToRot, CompositionMatchesAngleSum) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = angle(rng);
    const double b = angle(rng);
    const Mat2 lhs = angle_to_rot(a) * angle_to_rot(b);
    const Mat2 rhs = angle_to_rot(a + b);
    EXPECT_TRUE(lhs.isApprox(rhs, 1e-12)) << "a=" << a << " b=" << b;
  }
}

TEST(AngleToRot, OrthonormalWithUnitDeterminant) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-30.0, 30.0);
  for (int i = 0; i < 100; ++i) {
    const double a = angle(rng);
    const Mat2 r = angle_to_rot(a);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
    EXPECT_TRUE((r * r.transpose()).isApprox(Mat2::Identity(), 1e-12));
    // atan2 round trip
    EXPECT_NEAR(rot_to_angle(r), wrap_angle(a), 1e-12);
  }
}

TEST(Pose2, InverseAndComposition) {
  const Pose2 a = Pose2::from_angle(0.4, Vec2(1.0, -2.0), 0.0);
  const Pose2 b = Pose2::from_angle(-1.1, Vec2(0.5, 3.0), 1.0);
  const Pose2 ab = a * b;
  const Pose2 back = a.inverse() * ab;
  EXPECT_TRUE(back.rotation.isApprox(b.rotation, 1e-12));
  EXPECT_TRUE(back.position.isApprox(b.position, 1e-12));
}

TEST(RadarScan, ValidateCatchesBadInputs) {
  std::mt19937_64 rng(3);
  RadarScan scan = test::random_scan(rng, 8, 16, 0.5, 0.0, 0.25, true, 0.3);
  EXPECT_NO_THROW(scan.validate());

  RadarScan bad = scan;
  bad.intensity(2, 3) = -1.0f;
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = scan;
  bad.timestamps[4] = bad.timestamps[3];
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = scan;
  bad.azimuths[5] = bad.azimuths[4] - 0.01;
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = scan;
  bad.intensity(0, 0) = std::numeric_limits<float>::quiet_NaN();
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(RadarScan, ChirpPatternQueries) {
  std::mt19937_64 rng(4);
  const RadarScan tri = test::random_scan(rng, 8, 8, 0.5, 0.0, 0.25, true, 0.3);
  EXPECT_TRUE(tri.alternating_chirps());
  EXPECT_FALSE(tri.single_chirp());
  const RadarScan saw = test::random_scan(rng, 8, 8, 0.5, 0.0, 0.25, false, 0.3);
  EXPECT_FALSE(saw.alternating_chirps());
  EXPECT_TRUE(saw.single_chirp());
}

TEST(DatasetIo, ScanRoundTripsBitExactly) {
  std::mt19937_64 rng(11);
  RadarScan scan = test::random_scan(rng, 12, 24, 0.25, 17.5, 0.25, true, 0.4);
  // Awkward values that expose lossy formatting.
  scan.azimuths[3] += 1e-13;
  scan.timestamps[5] += 1e-13;
  scan.range_resolution = 0.1 + 0.2;

  const fs::path dir = fs::temp_directory_path() / "dro_scan_roundtrip";
  fs::remove_all(dir);
  write_scan(dir, 0, scan);
  const RadarScan loaded = read_scan(dir, 0);

  ASSERT_EQ(loaded.n_azimuths(), scan.n_azimuths());
  ASSERT_EQ(loaded.n_range_bins(), scan.n_range_bins());
  EXPECT_EQ(loaded.range_resolution, scan.range_resolution);
  for (int i = 0; i < scan.n_azimuths(); ++i) {
    EXPECT_EQ(loaded.azimuths[i], scan.azimuths[i]);
    EXPECT_EQ(loaded.timestamps[i], scan.timestamps[i]);
    EXPECT_EQ(loaded.chirp_dir[i], scan.chirp_dir[i]);
    for (int j = 0; j < scan.n_range_bins(); ++j)
      EXPECT_EQ(loaded.intensity(i, j), scan.intensity(i, j));
  }
  fs::remove_all(dir);
}

TEST(DatasetIo, MissingScanInSequenceIsAnError) {
  std::mt19937_64 rng(12);
  const RadarScan scan = test::random_scan(rng, 4, 8, 0.5, 0.0, 0.25, true, 0.5);
  const fs::path dir = fs::temp_directory_path() / "dro_scan_hole";
  fs::remove_all(dir);
  write_scan(dir / "scans", 0, scan);
  write_scan(dir / "scans", 2, scan);  // hole at index 1
  EXPECT_THROW(read_all_scans(dir), std::runtime_error);
  fs::remove_all(dir);
}

TEST(DatasetIo, GyroAndPoseCsvRoundTrip) {
  GyroSeries gyro;
  for (int i = 0; i < 10; ++i) {
    gyro.timestamps.push_back(0.01 * i + 1e-4);
    gyro.rates.push_back(std::sin(0.3 * i) * 1e-3);
  }
  const fs::path dir = fs::temp_directory_path() / "dro_csv_roundtrip";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_gyro_csv(dir / "gyro.csv", gyro);
  const GyroSeries loaded = read_gyro_csv(dir / "gyro.csv");
  ASSERT_EQ(loaded.timestamps.size(), gyro.timestamps.size());
  for (std::size_t i = 0; i < gyro.timestamps.size(); ++i) {
    EXPECT_EQ(loaded.timestamps[i], gyro.timestamps[i]);
    EXPECT_EQ(loaded.rates[i], gyro.rates[i]);
  }

  Trajectory poses{{0.0, 1.0 / 3.0, -2.0 / 7.0, 0.1},
                   {0.25, 2.0, 3.0, -3.0}};
  write_poses_csv(dir / "poses.csv", poses);
  const Trajectory loaded_poses = read_poses_csv(dir / "poses.csv");
  ASSERT_EQ(loaded_poses.size(), poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    EXPECT_EQ(loaded_poses[i].t, poses[i].t);
    EXPECT_EQ(loaded_poses[i].x, poses[i].x);
    EXPECT_EQ(loaded_poses[i].y, poses[i].y);
    EXPECT_EQ(loaded_poses[i].theta, poses[i].theta);
  }
  fs::remove_all(dir);
}

TEST(DatasetIo, ConfigFileRoundTripAndUnknownKey) {
  Config config;
  config.gamma = 0.25;
  config.beta = 0.049;
  config.mode = Mode::kD;
  config.max_iters = 123;
  const fs::path dir = fs::temp_directory_path() / "dro_config_roundtrip";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_config_file(dir / "config.txt", config);
  const Config loaded = read_config_file(dir / "config.txt");
  EXPECT_EQ(loaded.gamma, config.gamma);
  EXPECT_EQ(loaded.beta, config.beta);
  EXPECT_EQ(loaded.max_iters, config.max_iters);
  EXPECT_EQ(loaded.mode, config.mode);

  std::ofstream(dir / "bad.txt") << "gamma=0.5\nnot_a_key=1\n";
  EXPECT_THROW(read_config_file(dir / "bad.txt"), std::runtime_error);
  fs::remove_all(dir);
}

TEST(Config, ValidateRejectsOutOfRange) {
  Config config;
  config.gamma = 1.5;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = Config{};
  config.gp_neighborhood_u = 4;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = Config{};
  EXPECT_NO_THROW(config.validate());
}
