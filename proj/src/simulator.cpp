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

#include "dro/simulator.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "dro/motion_models.hpp"

namespace dro {

namespace fs = std::filesystem;

PiecewiseTrajectory::PiecewiseTrajectory(double t0, const Vec2& start_position,
                                         double start_theta,
                                         std::vector<TrajectorySegment> segments)
    : t0_(t0), segments_(std::move(segments)) {
  if (segments_.empty())
    throw std::invalid_argument("PiecewiseTrajectory: no segments");
  knot_times_.push_back(t0_);
  knot_thetas_.push_back(start_theta);
  knot_positions_.push_back(start_position);
  for (const auto& seg : segments_) {
    if (!(seg.duration > 0.0))
      throw std::invalid_argument("PiecewiseTrajectory: segment duration <= 0");
    const double theta0 = knot_thetas_.back();
    const Vec2 p0 = knot_positions_.back();
    // p(t0+d) = p0 + R(theta0) * (int_0^d R(omega s) ds) * v_body
    const Mat2 integral = rot_time_integral(seg.omega, seg.duration).value;
    knot_times_.push_back(knot_times_.back() + seg.duration);
    knot_thetas_.push_back(theta0 + seg.omega * seg.duration);
    knot_positions_.push_back(p0 + angle_to_rot(theta0) * (integral * seg.v_body));
  }
}

double PiecewiseTrajectory::t_end() const { return knot_times_.back(); }

std::size_t PiecewiseTrajectory::segment_of(double t) const {
  if (t <= knot_times_.front()) return 0;
  for (std::size_t i = 0; i + 1 < knot_times_.size(); ++i)
    if (t < knot_times_[i + 1]) return i;
  return segments_.size() - 1;
}

double PiecewiseTrajectory::theta_at(double t) const {
  const std::size_t i = segment_of(t);
  const double dt =
      std::clamp(t, knot_times_.front(), knot_times_.back()) - knot_times_[i];
  return knot_thetas_[i] + segments_[i].omega * dt;
}

Pose2 PiecewiseTrajectory::pose_at(double t) const {
  const std::size_t i = segment_of(t);
  const double dt =
      std::clamp(t, knot_times_.front(), knot_times_.back()) - knot_times_[i];
  const Mat2 integral = rot_time_integral(segments_[i].omega, dt).value;
  Pose2 pose;
  pose.rotation = angle_to_rot(knot_thetas_[i] + segments_[i].omega * dt);
  pose.position = knot_positions_[i] +
                  angle_to_rot(knot_thetas_[i]) * (integral * segments_[i].v_body);
  pose.timestamp = t;
  return pose;
}

Vec2 PiecewiseTrajectory::v_body_at(double t) const {
  return segments_[segment_of(t)].v_body;
}

Vec2 PiecewiseTrajectory::v_world_at(double t) const {
  return angle_to_rot(theta_at(t)) * v_body_at(t);
}

double PiecewiseTrajectory::omega_at(double t) const {
  return segments_[segment_of(t)].omega;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RadarScan synth_scan(const Scene& scene, double scan_start, std::uint64_t seed) {
  const RadarParams& radar = scene.radar;
  const int n = radar.n_azimuths;
  const int m = radar.n_range_bins;
  const double max_range = (m - 1) * radar.range_resolution;
  const double dt = radar.scan_period / n;

  RadarScan scan;
  scan.range_resolution = radar.range_resolution;
  scan.intensity = ImageF::Zero(n, m);
  scan.azimuths.resize(n);
  scan.timestamps.resize(n);
  scan.chirp_dir.resize(n);

  for (int i = 0; i < n; ++i) {
    const double tau = scan_start + i * dt;
    scan.azimuths[i] = i * kTwoPi / n;
    scan.timestamps[i] = tau;
    scan.chirp_dir[i] = radar.pattern == ChirpPattern::kSawtooth
                            ? ChirpDir::kUp
                            : (i % 2 == 0 ? ChirpDir::kUp : ChirpDir::kDown);
    const double chirp_sign = scan.chirp_dir[i] == ChirpDir::kUp ? 1.0 : -1.0;

    const Pose2 pose = scene.trajectory.pose_at(tau);
    const Vec2 v_body = scene.trajectory.v_body_at(tau) +
                        Vec2(0.0, scene.noise.doppler_vy_bias);
    const Mat2 world_to_body = pose.rotation.transpose();

    for (const Reflector& refl : scene.reflectors) {
      const Vec2 local = world_to_body * (Vec2(refl.x, refl.y) - pose.position);
      const double range = local.norm();
      if (range < radar.range_resolution || range > max_range) continue;
      const double offset =
          wrap_angle(std::atan2(local.y(), local.x()) - scan.azimuths[i]);
      if (std::abs(offset) > 4.0 * radar.beam_width) continue;
      const double falloff =
          std::exp(-0.5 * offset * offset / (radar.beam_width * radar.beam_width));
      // Radial closing velocity: positive when the sensor approaches.
      const double u = local.dot(v_body) / range;
      const double measured = range + 0.5 * chirp_sign * scene.beta * u;
      const double bin = measured / radar.range_resolution;
      const int j0 = static_cast<int>(std::floor(bin));
      const double frac = bin - j0;
      const float amount = static_cast<float>(refl.reflectivity * falloff);
      if (j0 >= 0 && j0 < m)
        scan.intensity(i, j0) += amount * static_cast<float>(1.0 - frac);
      if (j0 + 1 >= 0 && j0 + 1 < m)
        scan.intensity(i, j0 + 1) += amount * static_cast<float>(frac);
    }

    if (scene.noise.intensity_sigma > 0.0) {
      std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
      std::normal_distribution<double> dist(0.0, scene.noise.intensity_sigma);
      for (int j = 0; j < m; ++j)
        scan.intensity(i, j) = std::max(
            0.0f, scan.intensity(i, j) + static_cast<float>(dist(rng)));
    }
  }
  return scan;
}

GyroSeries synth_gyro(const Scene& scene, double t0, double t1, double rate_hz,
                      std::uint64_t seed) {
  GyroSeries gyro;
  const double step = 1.0 / rate_hz;
  std::mt19937_64 rng(mix_seed(seed, 0x6779));
  std::normal_distribution<double> dist(0.0, scene.noise.gyro_sigma);
  const int count = static_cast<int>(std::ceil((t1 - t0) / step)) + 1;
  for (int i = 0; i < count; ++i) {
    const double t = t0 + i * step;
    double rate = scene.trajectory.omega_at(t) + scene.noise.gyro_bias;
    if (scene.noise.gyro_sigma > 0.0) rate += dist(rng);
    gyro.timestamps.push_back(t);
    gyro.rates.push_back(rate);
  }
  return gyro;
}

void emit_dataset(const Scene& scene, double duration, const fs::path& out_dir,
                  std::uint64_t seed) {
  fs::create_directories(out_dir);
  const double t0 = scene.trajectory.t_begin();
  const int n_scans =
      static_cast<int>(std::floor(duration / scene.radar.scan_period));

  Trajectory gt;
  for (int k = 0; k < n_scans; ++k) {
    const double start = t0 + k * scene.radar.scan_period;
    const RadarScan scan =
        synth_scan(scene, start, mix_seed(seed, static_cast<std::uint64_t>(k)));
    write_scan(out_dir / "scans", k, scan);
    const Pose2 pose = scene.trajectory.pose_at(start);
    gt.push_back({start, pose.position.x(), pose.position.y(), pose.angle()});
  }
  const double t_final = t0 + n_scans * scene.radar.scan_period;
  const Pose2 last = scene.trajectory.pose_at(t_final);
  gt.push_back({t_final, last.position.x(), last.position.y(), last.angle()});
  write_poses_csv(out_dir / "gt_poses.csv", gt);

  // Cover one extra period so the final scan end stays inside gyro coverage.
  const GyroSeries gyro =
      synth_gyro(scene, t0, t_final + scene.radar.scan_period,
                 scene.gyro_rate_hz, mix_seed(seed, 0x9e37));
  write_gyro_csv(out_dir / "gyro.csv", gyro);
}

namespace {

std::vector<TrajectorySegment> ramp_segments(double from_speed, double to_speed,
                                             double step_speed, double step_dt) {
  std::vector<TrajectorySegment> segs;
  const int steps =
      static_cast<int>(std::round(std::abs(to_speed - from_speed) / step_speed));
  const double sign = to_speed >= from_speed ? 1.0 : -1.0;
  for (int i = 1; i <= steps; ++i)
    segs.push_back({step_dt, Vec2(from_speed + sign * i * step_speed, 0.0), 0.0});
  return segs;
}

Scene make_suburb(std::uint64_t seed) {
  Scene scene;
  std::mt19937_64 rng(mix_seed(seed, 0x5b5b));
  std::uniform_real_distribution<double> coord(-75.0, 75.0);
  std::uniform_real_distribution<double> refl(0.5, 1.5);
  for (int i = 0; i < 200; ++i)
    scene.reflectors.push_back({coord(rng), coord(rng), refl(rng)});

  // Stationary prefix, gentle ramp, then a rounded loop inside the field.
  std::vector<TrajectorySegment> segs;
  segs.push_back({5.0, Vec2::Zero(), 0.0});
  for (auto& s : ramp_segments(0.0, 8.0, 0.5, 0.25)) segs.push_back(s);
  const double turn_omega = (kPi / 2.0) / 6.0;  // quarter turn in 6 s
  for (int lap = 0; lap < 4; ++lap) {
    segs.push_back({6.0, Vec2(8.0, 0.0), 0.0});
    segs.push_back({6.0, Vec2(8.0, 0.0), turn_omega});
  }
  segs.push_back({10.0, Vec2(8.0, 0.0), 0.0});
  scene.trajectory = PiecewiseTrajectory(0.0, Vec2(-25.0, 25.0), 0.0, segs);
  return scene;
}

Scene make_tunnel(std::uint64_t /*seed*/) {
  Scene scene;
  // Two long parallel walls; longitudinally featureless.
  for (double x = -40.0; x <= 460.0; x += 2.0) {
    scene.reflectors.push_back({x, 8.0, 1.0});
    scene.reflectors.push_back({x, -8.0, 1.0});
  }
  std::vector<TrajectorySegment> segs{{40.0, Vec2(10.0, 0.0), 0.0}};
  scene.trajectory = PiecewiseTrajectory(0.0, Vec2::Zero(), 0.0, segs);
  return scene;
}

Scene make_corridor_empty(std::uint64_t /*seed*/) {
  Scene scene;
  // Sparse bright posts; the vehicle is already at speed on scan one, so
  // registration alone never acquires the velocity (tiny correlation basin)
  // while the Doppler constraint does.
  for (double x = -60.0; x <= 460.0; x += 60.0) {
    scene.reflectors.push_back({x, 12.0, 3.0});
    scene.reflectors.push_back({x + 30.0, -12.0, 3.0});
  }
  std::vector<TrajectorySegment> segs{{40.0, Vec2(10.0, 0.0), 0.0}};
  scene.trajectory = PiecewiseTrajectory(0.0, Vec2::Zero(), 0.0, segs);
  scene.noise.intensity_sigma = 0.02;
  return scene;
}

}  // namespace

Scene make_preset(const std::string& name, std::uint64_t seed) {
  if (name == "suburb") return make_suburb(seed);
  if (name == "tunnel") return make_tunnel(seed);
  if (name == "corridor-empty") return make_corridor_empty(seed);
  throw std::invalid_argument("unknown scene preset: " + name);
}

Scene read_scene_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open scene file " + file.string());

  Scene scene;
  std::vector<TrajectorySegment> segs;
  double start_x = 0.0, start_y = 0.0, start_theta = 0.0, t0 = 0.0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      // Bare reflector line: x_m,y_m,reflectivity
      std::istringstream iss(line);
      Reflector r;
      char c1 = 0, c2 = 0;
      if (!(iss >> r.x >> c1 >> r.y >> c2 >> r.reflectivity) || c1 != ',' ||
          c2 != ',')
        throw std::runtime_error("malformed reflector line: " + line);
      scene.reflectors.push_back(r);
      continue;
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "n_azimuths") scene.radar.n_azimuths = std::stoi(value);
    else if (key == "n_range_bins") scene.radar.n_range_bins = std::stoi(value);
    else if (key == "range_resolution_m") scene.radar.range_resolution = std::stod(value);
    else if (key == "scan_period_s") scene.radar.scan_period = std::stod(value);
    else if (key == "beam_width_rad") scene.radar.beam_width = std::stod(value);
    else if (key == "pattern")
      scene.radar.pattern = value == "sawtooth" ? ChirpPattern::kSawtooth
                                                : ChirpPattern::kTriangular;
    else if (key == "beta") scene.beta = std::stod(value);
    else if (key == "gyro_rate_hz") scene.gyro_rate_hz = std::stod(value);
    else if (key == "intensity_noise") scene.noise.intensity_sigma = std::stod(value);
    else if (key == "gyro_noise") scene.noise.gyro_sigma = std::stod(value);
    else if (key == "gyro_bias") scene.noise.gyro_bias = std::stod(value);
    else if (key == "doppler_vy_bias") scene.noise.doppler_vy_bias = std::stod(value);
    else if (key == "start_time_s") t0 = std::stod(value);
    else if (key == "start_x_m") start_x = std::stod(value);
    else if (key == "start_y_m") start_y = std::stod(value);
    else if (key == "start_theta_rad") start_theta = std::stod(value);
    else if (key == "segment") {
      std::istringstream iss(value);
      TrajectorySegment seg;
      char c1 = 0, c2 = 0, c3 = 0;
      if (!(iss >> seg.duration >> c1 >> seg.v_body.x() >> c2 >>
            seg.v_body.y() >> c3 >> seg.omega))
        throw std::runtime_error("malformed segment line: " + line);
      segs.push_back(seg);
    } else {
      throw std::runtime_error("unknown scene key: " + key);
    }
  }
  if (segs.empty())
    throw std::runtime_error("scene file has no trajectory segments");
  scene.trajectory =
      PiecewiseTrajectory(t0, Vec2(start_x, start_y), start_theta, segs);
  return scene;
}

void write_scene_file(const fs::path& file, const Scene& scene) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write scene file " + file.string());
  out.precision(17);
  out << "n_azimuths=" << scene.radar.n_azimuths << "\n"
      << "n_range_bins=" << scene.radar.n_range_bins << "\n"
      << "range_resolution_m=" << scene.radar.range_resolution << "\n"
      << "scan_period_s=" << scene.radar.scan_period << "\n"
      << "beam_width_rad=" << scene.radar.beam_width << "\n"
      << "pattern="
      << (scene.radar.pattern == ChirpPattern::kSawtooth ? "sawtooth"
                                                         : "triangular")
      << "\n"
      << "beta=" << scene.beta << "\n"
      << "gyro_rate_hz=" << scene.gyro_rate_hz << "\n"
      << "intensity_noise=" << scene.noise.intensity_sigma << "\n"
      << "gyro_noise=" << scene.noise.gyro_sigma << "\n"
      << "gyro_bias=" << scene.noise.gyro_bias << "\n"
      << "doppler_vy_bias=" << scene.noise.doppler_vy_bias << "\n"
      << "start_time_s=" << scene.trajectory.t_begin() << "\n";
  const Pose2 start = scene.trajectory.pose_at(scene.trajectory.t_begin());
  out << "start_x_m=" << start.position.x() << "\n"
      << "start_y_m=" << start.position.y() << "\n"
      << "start_theta_rad=" << start.angle() << "\n";
  for (const auto& seg : scene.trajectory.segments())
    out << "segment=" << seg.duration << "," << seg.v_body.x() << ","
        << seg.v_body.y() << "," << seg.omega << "\n";
  for (const auto& r : scene.reflectors)
    out << r.x << "," << r.y << "," << r.reflectivity << "\n";
}

}  // namespace dro
