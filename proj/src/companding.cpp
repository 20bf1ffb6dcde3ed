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

#include "gmhdr/companding.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmhdr/error.h"

namespace gmhdr {
namespace {

void check_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::kInvalidArgument, "mu-law parameter must be positive and finite");
  }
}

struct Pu21Entry {
  Pu21Variant variant;
  std::string_view name;
  std::array<double, 7> p;
};

// Fit coefficients of the PU21 reference encoder.
constexpr Pu21Entry kPu21Table[] = {
    {Pu21Variant::kBanding, "banding",
     {1.070275272, 0.4088273932, 0.153224308, 0.2520326168, 1.063512885, 1.14115047,
      521.4527484}},
    {Pu21Variant::kBandingGlare, "banding_glare",
     {0.353487901, 0.3734658629, 8.277049286e-05, 0.9062562627, 0.09150303166, 0.9099517204,
      596.3148142}},
    {Pu21Variant::kPeaks, "peaks",
     {1.043882782, 0.6459495343, 0.3194584211, 0.374025247, 1.114783422, 1.095360363,
      384.9217577}},
    {Pu21Variant::kPeaksGlare, "peaks_glare",
     {816.885024, 1479.463946, 0.001253215609, 0.9329636822, 0.06746643971, 1.573435413,
      419.6006374}},
};

}  // namespace

double mulaw_forward(double x, const MuLawParams& params) {
  check_mu(params.mu);
  if (!(x >= 0.0)) throw Error(ErrorCode::kDomain, "mulaw_forward: input must be >= 0");
  x = std::min(x, 1.0);
  return std::log1p(params.mu * x) / std::log1p(params.mu);
}

double mulaw_inverse(double y, const MuLawParams& params) {
  check_mu(params.mu);
  if (!(y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::kDomain, "mulaw_inverse: input must lie in [0, 1]");
  }
  return mulaw_expand_ext(y, params.mu);
}

double mulaw_expand_ext(double x, double mu) {
  // pow keeps R(1) == 1 exactly; expm1(log1p(mu)) does not.
  return (std::pow(1.0 + mu, x) - 1.0) / mu;
}

double mulaw_compress_ext(double y, double mu) { return std::log1p(mu * y) / std::log1p(mu); }

double gamma_decode(double code, double gamma) {
  return std::pow(std::clamp(code, 0.0, 1.0), gamma);
}

double gamma_encode(double x, double gamma) {
  return std::pow(std::clamp(x, 0.0, 1.0), 1.0 / gamma);
}

std::string_view pu21_variant_name(Pu21Variant v) {
  for (const auto& e : kPu21Table) {
    if (e.variant == v) return e.name;
  }
  return "unknown";
}

std::optional<Pu21Variant> parse_pu21_variant(std::string_view name) {
  for (const auto& e : kPu21Table) {
    if (e.name == name) return e.variant;
  }
  return std::nullopt;
}

Pu21Params Pu21Params::for_variant(Pu21Variant variant) {
  Pu21Params params;
  params.variant = variant;
  for (const auto& e : kPu21Table) {
    if (e.variant == variant) params.p = e.p;
  }
  return params;
}

double pu21_encode(double luminance, const Pu21Params& params) {
  if (!std::isfinite(luminance)) throw Error(ErrorCode::kDomain, "pu21_encode: non-finite luminance");
  const auto& p = params.p;
  const double y = std::clamp(luminance, params.l_min, params.l_max);
  const double yp = std::pow(y, p[3]);
  return p[6] * (std::pow((p[0] + p[1] * yp) / (1.0 + p[2] * yp), p[4]) - p[5]);
}

}  // namespace gmhdr
