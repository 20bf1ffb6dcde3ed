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


// Straight-line reference computations used as test oracles. Nothing here
// calls into the library beyond reading image containers.

#ifndef GMHDR_TESTS_ORACLES_BRUTE_FORCE_H
#define GMHDR_TESTS_ORACLES_BRUTE_FORCE_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gmhdr/image.h"

namespace gmhdr::oracles {

inline double mulaw(double x, double mu) { return std::log(1.0 + mu * x) / std::log(1.0 + mu); }

// PU21 banding_glare fit, coefficients copied from the pycvvdp PU class.
inline double pu21_banding_glare(double y) {
  const double p[7] = {0.353487901, 0.3734658629, 8.277049286e-05, 0.9062562627,
                       0.09150303166, 0.9099517204, 596.3148142};
  y = std::min(std::max(y, 0.005), 10000.0);
  const double yp = std::pow(y, p[3]);
  return p[6] * (std::pow((p[0] + p[1] * yp) / (1.0 + p[2] * yp), p[4]) - p[5]);
}

inline double pair_scale(const LinearImage& a, const LinearImage& b) {
  double m = 1.0;
  for (double v : a.data()) m = std::max(m, v);
  for (double v : b.data()) m = std::max(m, v);
  return m;
}

inline double pu21_psnr(const LinearImage& a, const LinearImage& b, double l_peak) {
  const double s = pair_scale(a, b);
  double sq = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double pa = pu21_banding_glare(std::min(a.data()[i] / s, 1.0) * l_peak);
    const double pb = pu21_banding_glare(std::min(b.data()[i] / s, 1.0) * l_peak);
    sq += (pa - pb) * (pa - pb);
  }
  const double mse = sq / static_cast<double>(a.data().size());
  const double peak = pu21_banding_glare(l_peak) - pu21_banding_glare(0.005);
  return 10.0 * std::log10(peak * peak / mse);
}

// Mean SSIM over every fully contained 11x11 window of the channel-mean luma,
// Gaussian weights sigma 1.5, centered second moments.
template <typename Map>
double ssim(const LinearImage& a, const LinearImage& b, Map map, double peak) {
  const std::size_t w = a.width(), h = a.height();
  std::vector<double> la(w * h), lb(w * h);
  for (std::size_t p = 0; p < w * h; ++p) {
    double sa = 0.0, sb = 0.0;
    for (int c = 0; c < 3; ++c) {
      sa += map(a.data()[3 * p + c]);
      sb += map(b.data()[3 * p + c]);
    }
    la[p] = sa / 3.0;
    lb[p] = sb / 3.0;
  }
  double g[11][11];
  double gsum = 0.0;
  for (int j = 0; j < 11; ++j) {
    for (int i = 0; i < 11; ++i) {
      g[j][i] = std::exp(-((i - 5.0) * (i - 5.0) + (j - 5.0) * (j - 5.0)) / (2.0 * 1.5 * 1.5));
      gsum += g[j][i];
    }
  }
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t y0 = 0; y0 + 11 <= h; ++y0) {
    for (std::size_t x0 = 0; x0 + 11 <= w; ++x0) {
      double ma = 0.0, mb = 0.0;
      for (int j = 0; j < 11; ++j) {
        for (int i = 0; i < 11; ++i) {
          ma += g[j][i] / gsum * la[(y0 + j) * w + x0 + i];
          mb += g[j][i] / gsum * lb[(y0 + j) * w + x0 + i];
        }
      }
      double va = 0.0, vb = 0.0, cov = 0.0;
      for (int j = 0; j < 11; ++j) {
        for (int i = 0; i < 11; ++i) {
          const double da = la[(y0 + j) * w + x0 + i] - ma;
          const double db = lb[(y0 + j) * w + x0 + i] - mb;
          va += g[j][i] / gsum * da * da;
          vb += g[j][i] / gsum * db * db;
          cov += g[j][i] / gsum * da * db;
        }
      }
      total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

inline std::uint8_t quantize(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
}

// Triangle-weighted merge of one sample from its per-frame codes.
inline double merge_sample(const std::vector<std::uint8_t>& codes, const std::vector<double>& evs,
                           std::size_t reference, double gamma) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const double z = codes[i] / 255.0;
    const double w = std::max(1e-3, 1.0 - std::fabs(2.0 * z - 1.0));
    num += w * (std::pow(z, gamma) / std::exp2(evs[i]));
    den += w;
  }
  if (den <= 1e-3 * static_cast<double>(codes.size())) {
    return std::pow(codes[reference] / 255.0, gamma) / std::exp2(evs[reference]);
  }
  return num / den;
}

// Degradation mask: mean absolute mu-law channel difference above sigma.
inline std::vector<bool> degradation_mask(const LinearImage& gt, const LinearImage& est, double sigma,
                                          double mu) {
  const double s = pair_scale(gt, est);
  std::vector<bool> m(gt.width() * gt.height());
  for (std::size_t p = 0; p < m.size(); ++p) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double a = mulaw(std::min(gt.data()[3 * p + c] / s, 1.0), mu);
      const double b = mulaw(std::min(est.data()[3 * p + c] / s, 1.0), mu);
      sum += std::fabs(a - b);
    }
    m[p] = sum / 3.0 > sigma;
  }
  return m;
}

}  // namespace gmhdr::oracles

#endif  // GMHDR_TESTS_ORACLES_BRUTE_FORCE_H
