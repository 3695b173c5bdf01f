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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dro/dataset_io.hpp"
#include "dro/metrics.hpp"
#include "dro/pipeline.hpp"
#include "dro/simulator.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"dro: Doppler-aware direct radar odometry"};
  app.require_subcommand(1);

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "generate a synthetic dataset");
  std::string scene_name = "suburb";
  double duration = 60.0;
  std::uint64_t seed = 0;
  std::string sim_out;
  sim->add_option("--scene", scene_name, "preset name or scene file path");
  sim->add_option("--duration", duration, "seconds of data")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("--out", sim_out, "output dataset directory")->required();

  // --- run ---
  auto* run = app.add_subcommand("run", "run odometry over a dataset");
  std::string data_dir, config_file, run_out, mode_name;
  run->add_option("--data", data_dir, "dataset directory")->required();
  run->add_option("--config", config_file, "key=value config file");
  run->add_option("--mode", mode_name, "gd, g, or d (overrides config)");
  run->add_option("--out", run_out, "output directory")->required();

  // --- eval ---
  auto* eval = app.add_subcommand("eval", "evaluate poses against ground truth");
  std::string est_file, gt_file, metric_name = "kitti", report_file;
  eval->add_option("--est", est_file, "estimated poses.csv")->required();
  eval->add_option("--gt", gt_file, "ground-truth poses.csv")->required();
  eval->add_option("--metric", metric_name, "kitti or rpe");
  eval->add_option("--out", report_file, "report csv path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      dro::Scene scene = fs::exists(scene_name)
                             ? dro::read_scene_file(scene_name)
                             : dro::make_preset(scene_name, seed);
      dro::emit_dataset(scene, duration, sim_out, seed);
      std::cout << "wrote "
                << static_cast<int>(duration / scene.radar.scan_period)
                << " scans to " << sim_out << " (beta=" << scene.beta << ")\n";
    } else if (run->parsed()) {
      dro::Config config;
      if (!config_file.empty()) config = dro::read_config_file(config_file);
      if (!mode_name.empty()) config.mode = dro::mode_from_string(mode_name);
      const dro::PipelineResult result =
          dro::run_dataset(data_dir, config, run_out);
      int robust = 0;
      long long iters = 0;
      for (const auto& s : result.scans) {
        robust += s.diag.robust_triggered ? 1 : 0;
        iters += s.diag.iterations;
      }
      std::cout << "processed " << result.scans.size() << " scans, avg "
                << (result.scans.empty()
                        ? 0.0
                        : static_cast<double>(iters) /
                              static_cast<double>(result.scans.size()))
                << " iterations, " << robust << " robust re-runs\n";
    } else if (eval->parsed()) {
      const dro::Trajectory est = dro::read_poses_csv(est_file);
      const dro::Trajectory gt = dro::read_poses_csv(gt_file);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!report_file.empty()) {
        file.open(report_file);
        if (!file) throw std::runtime_error("cannot write " + report_file);
        out = &file;
      }
      out->precision(12);
      if (metric_name == "kitti") {
        const dro::KittiResult r = dro::kitti_errors(est, gt);
        if (!r.valid) {
          std::cerr << "trajectory shorter than the minimum segment length\n";
          *out << "metric,value\nkitti_valid,0\n";
          return 0;
        }
        *out << "metric,value\n"
             << "kitti_trans_percent," << r.trans_percent << "\n"
             << "kitti_rot_deg_per_100m," << r.rot_deg_per_100m << "\n"
             << "kitti_segments," << r.segment_count << "\n";
        for (const auto& [length, err] : r.per_length)
          *out << "kitti_trans_percent_" << length << "m," << err.first << "\n";
      } else if (metric_name == "rpe") {
        const dro::RpeResult r = dro::rpe_se2(est, gt);
        if (!r.valid) {
          std::cerr << "trajectory shorter than the minimum segment length\n";
          *out << "metric,value\nrpe_valid,0\n";
          return 0;
        }
        *out << "metric,value\n"
             << "rpe_percent," << r.rmse_percent << "\n"
             << "rpe_segments," << r.segment_count << "\n";
      } else {
        throw std::runtime_error("unknown metric: " + metric_name);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
