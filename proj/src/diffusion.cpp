/*
 * Copyright 2026 The gmhdr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gmhdr/diffusion.h"

#include <cmath>
#include <numbers>
#include <string>

#include "gmhdr/error.h"
#include "gmhdr/kernels.h"

namespace gmhdr {
namespace {

void check_step(std::size_t t, const NoiseSchedule& sched) {
  if (t >= sched.num_steps()) {
    throw Error(ErrorCode::kInvalidArgument,
                "timestep " + std::to_string(t) + " outside schedule of " +
                    std::to_string(sched.num_steps()) + " steps");
  }
}

void check_shapes(const LatentGrid& a, const LatentGrid& b, const char* what) {
  if (!(a.shape == b.shape)) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": latent shapes differ");
  }
}

}  // namespace

NoiseSchedule::NoiseSchedule(std::vector<double> betas) : betas_(std::move(betas)) {
  if (betas_.empty()) throw Error(ErrorCode::kInvalidArgument, "noise schedule needs at least one step");
  alpha_bars_.reserve(betas_.size());
  double prod = 1.0;
  for (double b : betas_) {
    if (!(b > 0.0 && b < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "noise schedule betas must lie in (0, 1)");
    }
    prod *= 1.0 - b;
    if (!(prod > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cumulative alpha underflowed to 0");
    alpha_bars_.push_back(prod);
  }
}

double NoiseSchedule::alpha_bar(std::size_t t) const {
  check_step(t, *this);
  return alpha_bars_[t];
}

NoiseSchedule linear_schedule(std::size_t steps, double beta_start, double beta_end) {
  if (steps == 0 || !(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "linear schedule needs steps >= 1 and 0 < beta_start <= beta_end < 1");
  }
  std::vector<double> betas(steps);
  if (steps == 1) {
    betas[0] = beta_start;
  } else {
    for (std::size_t i = 0; i < steps; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(steps - 1);
      betas[i] = beta_start + (beta_end - beta_start) * f;
    }
    betas.back() = beta_end;
  }
  return NoiseSchedule(std::move(betas));
}

LatentGrid::LatentGrid(LatentShape s, std::vector<double> d) : shape(s), data(std::move(d)) {
  if (data.size() != shape.size()) {
    throw Error(ErrorCode::kInvalidArgument, "latent data length does not match its shape");
  }
}

LatentGrid q_sample(const LatentGrid& z0, std::size_t t, const LatentGrid& eps,
                    const NoiseSchedule& sched) {
  check_shapes(z0, eps, "q_sample");
  const double ab = sched.alpha_bar(t);
  LatentGrid out = LatentGrid::zeros(z0.shape);
  kernels::active().axpby(z0.data.data(), eps.data.data(), std::sqrt(ab), std::sqrt(1.0 - ab),
                          out.data.data(), out.data.size());
  return out;
}

LatentGrid one_step_x0(const LatentGrid& z_t, const LatentGrid& eps_hat, std::size_t t,
                       const NoiseSchedule& sched) {
  check_shapes(z_t, eps_hat, "one_step_x0");
  const double ab = sched.alpha_bar(t);
  LatentGrid out = LatentGrid::zeros(z_t.shape);
  kernels::active().sub_scaled_div(z_t.data.data(), eps_hat.data.data(), std::sqrt(1.0 - ab),
                                   std::sqrt(ab), out.data.data(), out.data.size());
  return out;
}

NormalSampler::NormalSampler(std::uint64_t seed) : engine_(seed) {}

double NormalSampler::uniform_open() {
  // (0, 1]: never returns 0, so log() below stays finite.
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double NormalSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

LatentGrid NormalSampler::grid(LatentShape shape) {
  std::vector<double> d(shape.size());
  for (auto& v : d) v = next();
  return LatentGrid(shape, std::move(d));
}

}  // namespace gmhdr
