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

#include "dro/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <memory>

#include "dro/bias_filters.hpp"
#include "dro/gp_infill.hpp"
#include "dro/motion_models.hpp"

namespace dro {

namespace fs = std::filesystem;

namespace {

bool uses_direct(Mode mode) { return mode != Mode::kD; }
bool uses_doppler(Mode mode) { return mode != Mode::kG; }

Pose2 chain_pose(const Pose2& anchor, const MotionModel& model,
                 const Vec2& v_body, double t) {
  Pose2 rel;
  rel.rotation = model.rot(t);
  rel.position = model.pos_integral(t) * v_body;
  rel.timestamp = t;
  Pose2 out = anchor * rel;
  // Re-orthonormalize so the rotation stays in SO(2) over long chains.
  out.rotation = angle_to_rot(rot_to_angle(out.rotation));
  return out;
}

std::vector<double> gyro_window(const GyroSeries& gyro, double t0, double t1) {
  std::vector<double> window;
  for (std::size_t i = 0; i < gyro.timestamps.size(); ++i)
    if (gyro.timestamps[i] >= t0 && gyro.timestamps[i] <= t1)
      window.push_back(gyro.rates[i]);
  return window;
}

}  // namespace

PipelineResult run_odometry(const std::vector<RadarScan>& scans,
                            const GyroSeries* gyro, const Config& config) {
  config.validate();
  PipelineResult result;
  if (scans.empty()) {
    std::cerr << "run_odometry: empty dataset, nothing to estimate\n";
    return result;
  }

  const bool direct = uses_direct(config.mode);
  const bool doppler = uses_doppler(config.mode);
  KernelStencil stencil;
  if (doppler)
    stencil = build_stencil(config.gp_lengthscale_az, config.gp_lengthscale_range,
                            config.gp_neighborhood_u, config.gp_neighborhood_v,
                            config.gp_noise);

  GyroSeries gyro_state;
  if (gyro != nullptr && !gyro->empty()) gyro_state = *gyro;
  const bool have_gyro = !gyro_state.empty();

  GyroBiasFilter gyro_bias_filter;
  LateralVelBiasFilter vy_filter;
  LocalMap map;
  Pose2 anchor = Pose2::from_angle(0.0, Vec2::Zero(), scans.front().timestamps.front());
  Vec2 prev_v = Vec2::Zero();
  double prev_omega = 0.0;

  for (std::size_t k = 0; k < scans.size(); ++k) {
    const RadarScan& scan = scans[k];
    scan.validate();
    const double t1 = scan.timestamps.front();
    const double t_end =
        k + 1 < scans.size()
            ? scans[k + 1].timestamps.front()
            : t1 + scan.n_azimuths() * (scan.timestamps.back() - t1) /
                       (scan.n_azimuths() - 1);
    anchor.timestamp = t1;

    const bool gyro_covers = have_gyro && gyro_state.covers(t1, t_end);
    if (have_gyro && !gyro_covers)
      std::cerr << "scan " << k
                << ": gyro gap inside the scan, falling back to the "
                   "constant-rate model\n";
    gyro_state.bias = gyro_bias_filter.bias();

    ImageF filtered;
    if (direct)
      filtered = filter_rows(scan.intensity, config.filter_blur_sigma);
    ChirpImages images;
    if (doppler) {
      images = split_and_infill(scan, stencil);
      images.up = filter_rows(images.up, config.filter_blur_sigma);
      images.down = filter_rows(images.down, config.filter_blur_sigma);
    }
    const ScanGeometry geometry = ScanGeometry::of(scan);

    ScanResult res;
    res.t_begin = t1;
    res.t_end = t_end;
    res.pose_begin = anchor;

    ScanState state;
    state.omega = prev_omega;
    state.v_body = prev_v;
    state.anchor = anchor;

    if (k == 0) {
      // No estimation on the first scan; it seeds the map at zero velocity.
      state.omega = 0.0;
      state.v_body = Vec2::Zero();
    } else {
      SolveInputs inputs;
      if (direct) {
        inputs.filtered = &filtered;
        inputs.map = &map;
      }
      if (doppler) inputs.images = &images;
      inputs.geometry = geometry;
      inputs.gyro = gyro_covers ? &gyro_state : nullptr;
      inputs.t_begin = t1;
      inputs.t_end = t_end;
      inputs.vy_bias = vy_filter.bias();

      state = optimize(inputs, state, config, res.diag);

      // Unphysical jumps trigger the reweighted re-run; the first estimated
      // scan has no converged predecessor to compare against.
      const double accel =
          (state.v_body - prev_v).norm() / (t_end - t1);
      if (k >= 2 && accel > config.accel_threshold)
        state = robust_reoptimize(inputs, {prev_omega, prev_v, anchor}, config,
                                  res.diag);
    }

    std::unique_ptr<MotionModel> model;
    if (gyro_covers)
      model = std::make_unique<GyroPreintModel>(gyro_state, t1, t_end);
    else
      model = std::make_unique<ConstOmegaModel>(state.omega, t1);
    res.omega = gyro_covers
                    ? static_cast<GyroPreintModel&>(*model).mean_rate()
                    : state.omega;

    if (k > 0) {
      if (have_gyro) {
        const auto window = gyro_window(gyro_state, t1, t_end);
        gyro_bias_filter.update(window, state.v_body.norm(), config);
      }
      if (doppler) {
        // Doppler-only velocity, uncorrected, observes the lateral bias.
        SolveInputs dopp_only;
        dopp_only.images = &images;
        dopp_only.geometry = geometry;
        dopp_only.gyro = gyro_covers ? &gyro_state : nullptr;
        dopp_only.t_begin = t1;
        dopp_only.t_end = t_end;
        Config capped = config;
        capped.max_iters = 10;
        SolveDiagnostics dopp_diag;
        const ScanState dopp = optimize(dopp_only, state, capped, dopp_diag);
        vy_filter.update(dopp.v_body, res.omega, config);
      }
    }

    if (direct)
      map = update_map(map, filtered, geometry, state, *model, config, t_end,
                       vy_filter.bias());

    res.state = state;
    res.gyro_bias = gyro_bias_filter.bias();
    res.vy_bias = vy_filter.bias();
    res.pose_end = chain_pose(anchor, *model, state.v_body, t_end);
    result.scans.push_back(res);
    result.poses.push_back(
        {t1, anchor.position.x(), anchor.position.y(), anchor.angle()});

    anchor = res.pose_end;
    prev_v = state.v_body;
    prev_omega = res.omega;
  }

  const Pose2& last = result.scans.back().pose_end;
  result.poses.push_back(
      {last.timestamp, last.position.x(), last.position.y(), last.angle()});
  return result;
}

PipelineResult run_dataset(const fs::path& data_dir, const Config& config,
                           const fs::path& out_dir) {
  const std::vector<RadarScan> scans = read_all_scans(data_dir);
  std::optional<GyroSeries> gyro;
  if (fs::exists(data_dir / "gyro.csv"))
    gyro = read_gyro_csv(data_dir / "gyro.csv");

  const PipelineResult result =
      run_odometry(scans, gyro ? &*gyro : nullptr, config);

  fs::create_directories(out_dir);
  write_poses_csv(out_dir / "poses.csv", result.poses);

  std::ofstream biases(out_dir / "biases.csv");
  biases << "timestamp_s,gyro_bias,vy_bias\n";
  biases.precision(17);
  for (const auto& s : result.scans)
    biases << s.t_begin << "," << s.gyro_bias << "," << s.vy_bias << "\n";

  std::ofstream diag(out_dir / "diag.csv");
  diag << "timestamp_s,iterations,final_score,degenerate,robust_triggered,"
          "robust_flagged\n";
  diag.precision(17);
  for (const auto& s : result.scans)
    diag << s.t_begin << "," << s.diag.iterations << "," << s.diag.final_score
         << "," << s.diag.degenerate << "," << s.diag.robust_triggered << ","
         << s.diag.robust_flagged << "\n";
  return result;
}

}  // namespace dro
