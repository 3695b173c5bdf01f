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

#include "dro/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "dataset binaries are little-endian");
static_assert(std::numeric_limits<float>::is_iec559,
              "dataset binaries are IEEE-754 float32");

namespace dro {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("failed to parse number: '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream iss(s);
  while (std::getline(iss, item, sep)) out.push_back(item);
  return out;
}

std::string scan_stem(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06d", index);
  return buf;
}

std::map<std::string, std::string> read_kv_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("malformed line in " + file.string() + ": " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

const std::string& require_key(const std::map<std::string, std::string>& kv,
                               const std::string& key, const fs::path& file) {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw std::runtime_error("missing key '" + key + "' in " + file.string());
  return it->second;
}

void write_float32_raw(const fs::path& file, const ImageF& image) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out.write(reinterpret_cast<const char*>(image.data()),
            static_cast<std::streamsize>(image.size() * sizeof(float)));
  if (!out) throw std::runtime_error("short write to " + file.string());
}

ImageF read_float32_raw(const fs::path& file, int rows, int cols) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  ImageF image(rows, cols);
  in.read(reinterpret_cast<char*>(image.data()),
          static_cast<std::streamsize>(image.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(image.size() * sizeof(float)))
    throw std::runtime_error("short read from " + file.string());
  return image;
}

}  // namespace

void write_scan(const fs::path& scans_dir, int index, const RadarScan& scan) {
  fs::create_directories(scans_dir);
  const std::string stem = scan_stem(index);
  write_float32_raw(scans_dir / (stem + ".bin"), scan.intensity);

  std::ofstream meta(scans_dir / (stem + ".meta"));
  if (!meta) throw std::runtime_error("cannot write meta for scan " + stem);
  meta << "n_azimuths=" << scan.n_azimuths() << "\n";
  meta << "n_range_bins=" << scan.n_range_bins() << "\n";
  meta << "range_resolution_m=" << format_double(scan.range_resolution) << "\n";
  auto write_list = [&meta](const char* key, auto&& format_item, std::size_t n) {
    meta << key << "=";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) meta << ",";
      format_item(i);
    }
    meta << "\n";
  };
  write_list("azimuths_rad",
             [&](std::size_t i) { meta << format_double(scan.azimuths[i]); },
             scan.azimuths.size());
  write_list("timestamps_s",
             [&](std::size_t i) { meta << format_double(scan.timestamps[i]); },
             scan.timestamps.size());
  write_list("chirp_up",
             [&](std::size_t i) {
               meta << (scan.chirp_dir[i] == ChirpDir::kUp ? '1' : '0');
             },
             scan.chirp_dir.size());
}

RadarScan read_scan(const fs::path& scans_dir, int index) {
  const std::string stem = scan_stem(index);
  const fs::path meta_file = scans_dir / (stem + ".meta");
  const auto kv = read_kv_file(meta_file);

  RadarScan scan;
  const int n = static_cast<int>(parse_double(require_key(kv, "n_azimuths", meta_file)));
  const int m = static_cast<int>(parse_double(require_key(kv, "n_range_bins", meta_file)));
  scan.range_resolution = parse_double(require_key(kv, "range_resolution_m", meta_file));
  for (const auto& item : split(require_key(kv, "azimuths_rad", meta_file), ','))
    scan.azimuths.push_back(parse_double(item));
  for (const auto& item : split(require_key(kv, "timestamps_s", meta_file), ','))
    scan.timestamps.push_back(parse_double(item));
  for (const auto& item : split(require_key(kv, "chirp_up", meta_file), ','))
    scan.chirp_dir.push_back(item == "1" ? ChirpDir::kUp : ChirpDir::kDown);
  scan.intensity = read_float32_raw(scans_dir / (stem + ".bin"), n, m);
  scan.validate();
  return scan;
}

std::vector<RadarScan> read_all_scans(const fs::path& data_dir) {
  const fs::path scans_dir = data_dir / "scans";
  std::vector<RadarScan> scans;
  if (!fs::exists(scans_dir)) return scans;
  int count = 0;
  while (fs::exists(scans_dir / (scan_stem(count) + ".meta"))) ++count;
  // Anything beyond the contiguous prefix means a hole in the sequence.
  for (const auto& entry : fs::directory_iterator(scans_dir)) {
    if (entry.path().extension() != ".meta") continue;
    const int idx = std::stoi(entry.path().stem().string());
    if (idx >= count)
      throw std::runtime_error("missing scan " + scan_stem(count) +
                               " before " + entry.path().stem().string());
  }
  scans.reserve(count);
  for (int i = 0; i < count; ++i) scans.push_back(read_scan(scans_dir, i));
  return scans;
}

void write_gyro_csv(const fs::path& file, const GyroSeries& gyro) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "timestamp_s,omega_rad_s\n";
  for (std::size_t i = 0; i < gyro.timestamps.size(); ++i)
    out << format_double(gyro.timestamps[i]) << ","
        << format_double(gyro.rates[i]) << "\n";
}

GyroSeries read_gyro_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  GyroSeries gyro;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2)
      throw std::runtime_error("malformed gyro line: " + line);
    gyro.timestamps.push_back(parse_double(cols[0]));
    gyro.rates.push_back(parse_double(cols[1]));
  }
  gyro.validate();
  return gyro;
}

void write_poses_csv(const fs::path& file, const Trajectory& poses) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "timestamp_s,x_m,y_m,theta_rad\n";
  for (const auto& p : poses)
    out << format_double(p.t) << "," << format_double(p.x) << ","
        << format_double(p.y) << "," << format_double(p.theta) << "\n";
}

Trajectory read_poses_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  Trajectory poses;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4)
      throw std::runtime_error("malformed pose line: " + line);
    poses.push_back({parse_double(cols[0]), parse_double(cols[1]),
                     parse_double(cols[2]), parse_double(cols[3])});
  }
  return poses;
}

Config read_config_file(const fs::path& file) {
  const auto kv = read_kv_file(file);
  Config config;
  for (const auto& [key, value] : kv) {
    if (key == "gamma") config.gamma = parse_double(value);
    else if (key == "beta") config.beta = parse_double(value);
    else if (key == "map_resolution") config.map_resolution = parse_double(value);
    else if (key == "map_extent") config.map_extent = parse_double(value);
    else if (key == "gp_lengthscale_az") config.gp_lengthscale_az = parse_double(value);
    else if (key == "gp_lengthscale_range") config.gp_lengthscale_range = parse_double(value);
    else if (key == "gp_noise") config.gp_noise = parse_double(value);
    else if (key == "gp_neighborhood_u") config.gp_neighborhood_u = static_cast<int>(parse_double(value));
    else if (key == "gp_neighborhood_v") config.gp_neighborhood_v = static_cast<int>(parse_double(value));
    else if (key == "filter_blur_sigma") config.filter_blur_sigma = parse_double(value);
    else if (key == "step_init") config.step_init = parse_double(value);
    else if (key == "step_min") config.step_min = parse_double(value);
    else if (key == "max_iters") config.max_iters = static_cast<int>(parse_double(value));
    else if (key == "accel_threshold") config.accel_threshold = parse_double(value);
    else if (key == "static_vel_threshold") config.static_vel_threshold = parse_double(value);
    else if (key == "bias_init_samples") config.bias_init_samples = static_cast<int>(parse_double(value));
    else if (key == "bias_lowpass_alpha") config.bias_lowpass_alpha = parse_double(value);
    else if (key == "vy_bias_lowpass_alpha") config.vy_bias_lowpass_alpha = parse_double(value);
    else if (key == "axle_offset") config.axle_offset = parse_double(value);
    else if (key == "max_body_speed") config.max_body_speed = parse_double(value);
    else if (key == "mode") config.mode = mode_from_string(value);
    else throw std::runtime_error("unknown config key: " + key);
  }
  config.validate();
  return config;
}

void write_config_file(const fs::path& file, const Config& config) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "gamma=" << format_double(config.gamma) << "\n"
      << "beta=" << format_double(config.beta) << "\n"
      << "map_resolution=" << format_double(config.map_resolution) << "\n"
      << "map_extent=" << format_double(config.map_extent) << "\n"
      << "gp_lengthscale_az=" << format_double(config.gp_lengthscale_az) << "\n"
      << "gp_lengthscale_range=" << format_double(config.gp_lengthscale_range) << "\n"
      << "gp_noise=" << format_double(config.gp_noise) << "\n"
      << "gp_neighborhood_u=" << config.gp_neighborhood_u << "\n"
      << "gp_neighborhood_v=" << config.gp_neighborhood_v << "\n"
      << "filter_blur_sigma=" << format_double(config.filter_blur_sigma) << "\n"
      << "step_init=" << format_double(config.step_init) << "\n"
      << "step_min=" << format_double(config.step_min) << "\n"
      << "max_iters=" << config.max_iters << "\n"
      << "accel_threshold=" << format_double(config.accel_threshold) << "\n"
      << "static_vel_threshold=" << format_double(config.static_vel_threshold) << "\n"
      << "bias_init_samples=" << config.bias_init_samples << "\n"
      << "bias_lowpass_alpha=" << format_double(config.bias_lowpass_alpha) << "\n"
      << "vy_bias_lowpass_alpha=" << format_double(config.vy_bias_lowpass_alpha) << "\n"
      << "axle_offset=" << format_double(config.axle_offset) << "\n"
      << "max_body_speed=" << format_double(config.max_body_speed) << "\n"
      << "mode=" << mode_to_string(config.mode) << "\n";
}

void write_map_dump(const fs::path& prefix, const LocalMap& map) {
  write_float32_raw(prefix.string() + ".bin", map.image);
  std::ofstream meta(prefix.string() + ".meta");
  if (!meta) throw std::runtime_error("cannot write map meta");
  meta << "height=" << map.height() << "\n"
       << "width=" << map.width() << "\n"
       << "resolution_m=" << format_double(map.resolution) << "\n"
       << "origin_x_m=" << format_double(map.origin.x()) << "\n"
       << "origin_y_m=" << format_double(map.origin.y()) << "\n"
       << "frame_time_s=" << format_double(map.frame_time) << "\n";
}

}  // namespace dro
