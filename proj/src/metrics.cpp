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

#include "dro/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace dro {

namespace {

constexpr int kKittiStride = 5;

std::vector<double> cumulative_distances(const Trajectory& poses) {
  std::vector<double> dist(poses.size(), 0.0);
  for (std::size_t i = 1; i < poses.size(); ++i)
    dist[i] = dist[i - 1] + std::hypot(poses[i].x - poses[i - 1].x,
                                       poses[i].y - poses[i - 1].y);
  return dist;
}

/// First index at travelled distance >= target from `start`, or -1.
int end_index_for_length(const std::vector<double>& dist, int start,
                         double length) {
  const double target = dist[start] + length;
  const auto it = std::lower_bound(dist.begin() + start, dist.end(), target);
  if (it == dist.end()) return -1;
  return static_cast<int>(it - dist.begin());
}

struct RelPose {
  double dx, dy, dtheta;
};

/// b expressed in a's frame (a^-1 * b) for row poses.
RelPose relative(const TimedPose& a, const TimedPose& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  const double px = b.x - a.x;
  const double py = b.y - a.y;
  // R(theta)^T under the [[c, s], [-s, c]] layout.
  return {c * px - s * py, s * px + c * py, wrap_angle(b.theta - a.theta)};
}

}  // namespace

TimedPose interpolate_pose(const Trajectory& trajectory, double t) {
  if (trajectory.empty())
    throw std::invalid_argument("interpolate_pose: empty trajectory");
  if (t <= trajectory.front().t) return trajectory.front();
  if (t >= trajectory.back().t) return trajectory.back();
  const auto it = std::upper_bound(
      trajectory.begin(), trajectory.end(), t,
      [](double value, const TimedPose& p) { return value < p.t; });
  const TimedPose& b = *it;
  const TimedPose& a = *(it - 1);
  const double alpha = (t - a.t) / (b.t - a.t);
  TimedPose out;
  out.t = t;
  out.x = (1.0 - alpha) * a.x + alpha * b.x;
  out.y = (1.0 - alpha) * a.y + alpha * b.y;
  out.theta = a.theta + alpha * wrap_angle(b.theta - a.theta);
  return out;
}

KittiResult kitti_errors(const Trajectory& est, const Trajectory& gt) {
  KittiResult result;
  if (gt.size() < 2 || est.empty()) return result;

  Trajectory est_resampled(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i)
    est_resampled[i] = interpolate_pose(est, gt[i].t);
  const std::vector<double> dist = cumulative_distances(gt);

  struct Accumulator {
    double trans = 0.0, rot = 0.0;
    int count = 0;
  };
  std::map<int, Accumulator> by_length;

  for (int start = 0; start < static_cast<int>(gt.size());
       start += kKittiStride) {
    for (int length = 100; length <= 800; length += 100) {
      const int end = end_index_for_length(dist, start, length);
      if (end < 0) break;
      const RelPose gt_rel = relative(gt[start], gt[end]);
      const RelPose est_rel = relative(est_resampled[start], est_resampled[end]);
      const double seg_len = dist[end] - dist[start];
      const double trans_err =
          std::hypot(est_rel.dx - gt_rel.dx, est_rel.dy - gt_rel.dy) / seg_len;
      const double rot_err = std::abs(wrap_angle(est_rel.dtheta - gt_rel.dtheta)) /
                             seg_len;
      auto& acc = by_length[length];
      acc.trans += trans_err;
      acc.rot += rot_err;
      ++acc.count;
    }
  }

  double trans_sum = 0.0, rot_sum = 0.0;
  int total = 0;
  for (const auto& [length, acc] : by_length) {
    result.per_length[length] = {100.0 * acc.trans / acc.count,
                                 (180.0 / kPi) * 100.0 * acc.rot / acc.count};
    trans_sum += acc.trans;
    rot_sum += acc.rot;
    total += acc.count;
  }
  if (total == 0) return result;  // flagged: trajectory shorter than 100 m
  result.trans_percent = 100.0 * trans_sum / total;
  result.rot_deg_per_100m = (180.0 / kPi) * 100.0 * rot_sum / total;
  result.segment_count = total;
  result.valid = true;
  return result;
}

RpeResult rpe_se2(const Trajectory& est, const Trajectory& gt) {
  RpeResult result;
  if (gt.size() < 2 || est.empty()) return result;

  Trajectory est_resampled(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i)
    est_resampled[i] = interpolate_pose(est, gt[i].t);
  const std::vector<double> dist = cumulative_distances(gt);

  double total = 0.0;
  int count = 0;
  for (const int length : {50, 100, 150, 200}) {
    for (int start = 0; start < static_cast<int>(gt.size());
         start += kKittiStride) {
      const int end = end_index_for_length(dist, start, length);
      if (end < 0) break;
      // Closed-form 2-D Procrustes alignment of the estimated sub-segment
      // onto the ground-truth one.
      const int n = end - start + 1;
      double gx = 0.0, gy = 0.0, ex = 0.0, ey = 0.0;
      for (int i = start; i <= end; ++i) {
        gx += gt[i].x;
        gy += gt[i].y;
        ex += est_resampled[i].x;
        ey += est_resampled[i].y;
      }
      gx /= n; gy /= n; ex /= n; ey /= n;
      double sc = 0.0, ss = 0.0;
      for (int i = start; i <= end; ++i) {
        const double ax = est_resampled[i].x - ex;
        const double ay = est_resampled[i].y - ey;
        const double bx = gt[i].x - gx;
        const double by = gt[i].y - gy;
        sc += ax * bx + ay * by;
        ss += ax * by - ay * bx;
      }
      const double angle = std::atan2(ss, sc);
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      double sq = 0.0;
      for (int i = start; i <= end; ++i) {
        const double ax = est_resampled[i].x - ex;
        const double ay = est_resampled[i].y - ey;
        const double rx = c * ax - s * ay + gx;
        const double ry = s * ax + c * ay + gy;
        sq += (rx - gt[i].x) * (rx - gt[i].x) + (ry - gt[i].y) * (ry - gt[i].y);
      }
      const double rmse = std::sqrt(sq / n);
      total += rmse / (dist[end] - dist[start]);
      ++count;
    }
  }
  if (count == 0) return result;
  result.rmse_percent = 100.0 * total / count;
  result.segment_count = count;
  result.valid = true;
  return result;
}

}  // namespace dro
