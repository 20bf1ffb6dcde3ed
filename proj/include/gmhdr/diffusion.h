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

#ifndef GMHDR_DIFFUSION_H
#define GMHDR_DIFFUSION_H

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace gmhdr {

// Noise schedule of a variance-preserving forward process.
// alpha_bars[t] = prod_{s <= t} (1 - betas[s]).
class NoiseSchedule {
 public:
  explicit NoiseSchedule(std::vector<double> betas);

  std::size_t num_steps() const { return betas_.size(); }
  const std::vector<double>& betas() const { return betas_; }
  const std::vector<double>& alpha_bars() const { return alpha_bars_; }
  double alpha_bar(std::size_t t) const;

 private:
  std::vector<double> betas_;
  std::vector<double> alpha_bars_;
};

inline constexpr std::size_t kDefaultSteps = 1000;
inline constexpr double kDefaultBetaStart = 1e-4;
inline constexpr double kDefaultBetaEnd = 0.02;

// Betas evenly spaced from beta_start to beta_end inclusive.
NoiseSchedule linear_schedule(std::size_t steps = kDefaultSteps,
                              double beta_start = kDefaultBetaStart,
                              double beta_end = kDefaultBetaEnd);

struct LatentShape {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t size() const { return channels * height * width; }
  bool operator==(const LatentShape&) const = default;
};

struct LatentGrid {
  LatentShape shape;
  std::vector<double> data;

  LatentGrid() = default;
  LatentGrid(LatentShape s, std::vector<double> d);
  static LatentGrid zeros(LatentShape s) { return LatentGrid(s, std::vector<double>(s.size(), 0.0)); }
};

// z_t = sqrt(abar_t) z0 + sqrt(1 - abar_t) eps
LatentGrid q_sample(const LatentGrid& z0, std::size_t t, const LatentGrid& eps,
                    const NoiseSchedule& sched);

// z0_hat = (z_t - sqrt(1 - abar_t) eps_hat) / sqrt(abar_t)
LatentGrid one_step_x0(const LatentGrid& z_t, const LatentGrid& eps_hat, std::size_t t,
                       const NoiseSchedule& sched);

/*
 * Reproducible normal samples: std::mt19937_64 (fully specified by the
 * standard) feeds 53-bit uniforms u = ((x >> 11) + 1) * 2^-53 in (0, 1] into
 * the Box-Muller transform, both outputs of each pair used in order.
 * std::normal_distribution is avoided because its algorithm is
 * implementation defined.
 */
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed);
  double next();
  LatentGrid grid(LatentShape shape);

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gmhdr

#endif  // GMHDR_DIFFUSION_H
