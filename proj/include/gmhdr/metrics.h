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

#ifndef GMHDR_METRICS_H
#define GMHDR_METRICS_H

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmhdr/companding.h"
#include "gmhdr/gainmap.h"
#include "gmhdr/image.h"

namespace gmhdr {

enum class MetricDomain { kLinear, kMuLaw, kPu21 };

std::string_view domain_name(MetricDomain d);
std::optional<MetricDomain> parse_domain(std::string_view name);

struct MetricParams {
  double mu = kDefaultMu;
  double l_peak = 100.0;  // cd/m^2 for normalized 1.0 in the PU21 domain
  Pu21Variant pu21_variant = Pu21Variant::kBandingGlare;
  int ssim_window = 11;
  double ssim_sigma = 1.5;
  double ssim_k1 = 0.01;
  double ssim_k2 = 0.03;
};

/*
 * Domain mapping applied before PSNR/SSIM:
 *   kLinear: values as stored, peak 1.
 *   kMuLaw:  T(clamp(x / s, 0, 1)), peak 1.
 *   kPu21:   P(clamp(x / s, 0, 1) * l_peak), peak P(l_peak) - P(l_min).
 * s = max(1, peak of both images), shared by the pair.
 */
struct DomainPair {
  std::vector<double> a;
  std::vector<double> b;
  double peak = 1.0;
};

DomainPair map_to_domain(const LinearImage& a, const LinearImage& b, MetricDomain domain,
                         const MetricParams& params = {});

// 10 log10(peak^2 / MSE); +infinity for identical inputs.
double psnr(const LinearImage& a, const LinearImage& b, MetricDomain domain,
            const MetricParams& params = {});
double psnr_from_mse(double mse, double peak);

// Mean SSIM over valid window positions of the channel-mean luma.
double ssim(const LinearImage& a, const LinearImage& b, MetricDomain domain,
            const MetricParams& params = {});

// Mean |g_hat - g| over dequantized codes. Variants must match.
double gm_l1(const GainMap& g_hat, const GainMap& g);

// Mean |T(h) - T(h_hat)| with the shared normalization above.
double mulaw_l1(const LinearImage& h_hat, const LinearImage& h, double mu = kDefaultMu);

struct MetricReport {
  std::string name;
  MetricDomain domain = MetricDomain::kLinear;
  double value = 0.0;
  std::vector<std::pair<std::string, std::string>> params;
};

std::vector<std::pair<std::string, std::string>> report_params(std::string_view metric,
                                                              MetricDomain domain,
                                                              const MetricParams& params);

inline constexpr std::string_view kCsvHeader = "name,domain,value,params";

// One CSV row: name,domain,value,k=v;k=v. +infinity prints as "inf".
std::string to_csv_row(const MetricReport& report);
std::string format_real(double v);

}  // namespace gmhdr

#endif  // GMHDR_METRICS_H
