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

#ifndef GMHDR_COMPANDING_H
#define GMHDR_COMPANDING_H

#include <array>
#include <optional>
#include <string_view>

namespace gmhdr {

inline constexpr double kDefaultMu = 100.0;
inline constexpr double kDefaultGamma = 2.2;

struct MuLawParams {
  double mu = kDefaultMu;
};

// T(x) = ln(1 + mu x) / ln(1 + mu). Inputs above 1 clamp to 1; negative or
// NaN inputs throw ErrorCode::kDomain.
double mulaw_forward(double x, const MuLawParams& params = {});

// R(y) = ((1 + mu)^y - 1) / mu on [0, 1]; anything else throws kDomain.
double mulaw_inverse(double y, const MuLawParams& params = {});

// The same closed forms without range restrictions, for gain expansion
// beyond [0, 1]. mulaw_compress_ext requires y > -1/mu.
double mulaw_expand_ext(double x, double mu);
double mulaw_compress_ext(double y, double mu);

// c^gamma and x^(1/gamma), inputs clamped to [0, 1].
double gamma_decode(double code, double gamma = kDefaultGamma);
double gamma_encode(double x, double gamma = kDefaultGamma);

enum class Pu21Variant { kBanding, kBandingGlare, kPeaks, kPeaksGlare };

std::string_view pu21_variant_name(Pu21Variant v);
std::optional<Pu21Variant> parse_pu21_variant(std::string_view name);

/*
 * PU21 perceptually uniform encoding:
 *   P(Y) = p7 * (((p1 + p2 Y^p4) / (1 + p3 Y^p4))^p5 - p6)
 * with Y in cd/m^2 clamped to [l_min, l_max].
 */
struct Pu21Params {
  Pu21Variant variant = Pu21Variant::kBandingGlare;
  std::array<double, 7> p{};
  double l_min = 0.005;
  double l_max = 10000.0;

  static Pu21Params for_variant(Pu21Variant variant);
  static Pu21Params banding_glare() { return for_variant(Pu21Variant::kBandingGlare); }
};

// Throws kDomain for non-finite luminance.
double pu21_encode(double luminance, const Pu21Params& params = Pu21Params::banding_glare());

}  // namespace gmhdr

#endif  // GMHDR_COMPANDING_H
