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

#include "dro/solver.hpp"

#include <memory>

namespace dro {

namespace {

struct Evaluation {
  double score = 0.0;
  Eigen::VectorXd gradient;
};

class ObjectiveStack {
 public:
  ObjectiveStack(const SolveInputs& in, const Config& config,
                 const ScanState& init)
      : in_(in), config_(config), template_state_(init) {
    estimate_omega_ = in.gyro == nullptr;
    if (!estimate_omega_)
      gyro_model_ = std::make_unique<GyroPreintModel>(*in.gyro, in.t_begin,
                                                      in.t_end);
  }

  int dim() const { return estimate_omega_ ? 3 : 2; }

  Eigen::VectorXd pack(const ScanState& state) const {
    Eigen::VectorXd x(dim());
    if (estimate_omega_) {
      x << state.omega, state.v_body.x(), state.v_body.y();
    } else {
      x << state.v_body.x(), state.v_body.y();
    }
    return x;
  }

  ScanState unpack(const Eigen::VectorXd& x) const {
    ScanState state = template_state_;
    if (estimate_omega_) {
      state.omega = x(0);
      state.v_body = Vec2(x(1), x(2));
    } else {
      state.v_body = Vec2(x(0), x(1));
    }
    return state;
  }

  Evaluation evaluate(const Eigen::VectorXd& x) const {
    const ScanState state = unpack(x);
    const MotionModel& model = *model_for(state);

    Evaluation eval;
    eval.gradient = Eigen::VectorXd::Zero(dim());
    if (in_.map != nullptr && in_.filtered != nullptr) {
      const auto res = intensity_objective(*in_.filtered, in_.geometry,
                                           *in_.map, state, model, config_,
                                           in_.weights_intensity, in_.vy_bias);
      eval.score += res.score;
      if (estimate_omega_) {
        eval.gradient(0) += res.grad_omega;
        eval.gradient.tail<2>() += res.grad_v;
      } else {
        eval.gradient += res.grad_v;
      }
    }
    if (in_.images != nullptr) {
      const auto res = doppler_objective(*in_.images, state, model, config_,
                                         in_.weights_doppler, in_.vy_bias);
      eval.score += res.score;
      eval.gradient.tail<2>() += res.grad_v;
    }
    return eval;
  }

  const MotionModel* model_for(const ScanState& state) const {
    if (!estimate_omega_) return gyro_model_.get();
    const_model_ = std::make_unique<ConstOmegaModel>(state.omega, in_.t_begin);
    return const_model_.get();
  }

 private:
  const SolveInputs& in_;
  const Config& config_;
  ScanState template_state_;
  bool estimate_omega_ = false;
  std::unique_ptr<GyroPreintModel> gyro_model_;
  mutable std::unique_ptr<ConstOmegaModel> const_model_;
};

}  // namespace

double robust_weight(double measured, double interpolated) {
  const double d = std::abs(measured - interpolated) - 1.0;
  const double d2 = d * d;
  return d2 * d2 * d2;
}

ImageF robust_weights_intensity(const SolveInputs& in, const ScanState& state,
                                const Config& config) {
  const ImageF& intensity = *in.filtered;
  const int n = static_cast<int>(intensity.rows());
  const int m = static_cast<int>(intensity.cols());
  ImageF weights = ImageF::Ones(n, m);

  ObjectiveStack stack(in, config, state);
  const MotionModel& model = *stack.model_for(state);
  const auto frames = azimuth_frames(in.geometry, state, model, config.beta,
                                     in.t_begin, in.vy_bias);
  for (int i = 0; i < n; ++i) {
    const AzimuthFrame& f = frames[i];
    for (int j = 0; j < m; ++j) {
      const double value = intensity(i, j);
      if (value == 0.0f) continue;
      const double r =
          j * in.geometry.range_resolution + 0.5 * f.chirp_sign * f.dshift;
      const Vec2 z = f.rot * (r * f.beam) + f.pos;
      weights(i, j) =
          static_cast<float>(robust_weight(value, bilinear(*in.map, z.x(), z.y())));
    }
  }
  return weights;
}

ImageF robust_weights_doppler(const SolveInputs& in, const ScanState& state,
                              const Config& config) {
  const ChirpImages& images = *in.images;
  const int n = static_cast<int>(images.down.rows());
  const int m = static_cast<int>(images.down.cols());
  ImageF weights = ImageF::Ones(n, m);
  const Vec2 v_doppler = state.v_body - Vec2(0.0, in.vy_bias);
  for (int i = 0; i < n; ++i) {
    const Vec2 beam(std::cos(images.azimuths[i]), std::sin(images.azimuths[i]));
    const double dshift = config.beta * beam.dot(v_doppler);
    for (int j = 0; j < m; ++j) {
      const double down = images.down(i, j);
      if (down == 0.0) continue;
      const double up = row_query(images.up, i,
                                  j * images.range_resolution + dshift,
                                  images.range_resolution);
      weights(i, j) = static_cast<float>(robust_weight(down, up));
    }
  }
  return weights;
}

ScanState optimize(const SolveInputs& in, const ScanState& init,
                   const Config& config, SolveDiagnostics& diag) {
  const ObjectiveStack stack(in, config, init);

  Eigen::VectorXd x = stack.pack(init);
  Evaluation current = stack.evaluate(x);
  if (current.gradient.norm() == 0.0) {
    diag.degenerate = true;
    diag.final_score = current.score;
    return init;
  }

  double step = config.step_init;
  while (step >= config.step_min && diag.iterations < config.max_iters) {
    const Eigen::VectorXd x_try =
        x + step * current.gradient / current.gradient.norm();
    const ScanState try_state = stack.unpack(x_try);
    ++diag.iterations;
    if (try_state.v_body.norm() > config.max_body_speed) {
      step *= 0.5;
      continue;
    }
    const Evaluation trial = stack.evaluate(x_try);
    if (trial.score > current.score) {
      x = x_try;
      current = trial;
      if (current.gradient.norm() == 0.0) break;
    } else {
      step *= 0.5;
    }
  }

  diag.final_score = current.score;
  return stack.unpack(x);
}

ScanState robust_reoptimize(const SolveInputs& in, const ScanState& prev,
                            const Config& config, SolveDiagnostics& diag) {
  SolveInputs weighted = in;
  ImageF wi, wd;
  if (in.map != nullptr && in.filtered != nullptr) {
    wi = robust_weights_intensity(in, prev, config);
    weighted.weights_intensity = &wi;
  }
  if (in.images != nullptr) {
    wd = robust_weights_doppler(in, prev, config);
    weighted.weights_doppler = &wd;
  }

  diag.robust_triggered = true;
  diag.iterations = 0;
  const ScanState out = optimize(weighted, prev, config, diag);
  const double dt = in.t_end - in.t_begin;
  if ((out.v_body - prev.v_body).norm() / dt > config.accel_threshold)
    diag.robust_flagged = true;
  return out;
}

}  // namespace dro
