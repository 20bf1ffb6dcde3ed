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

#include "gmhdr/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "gmhdr/degradation.h"
#include "gmhdr/error.h"
#include "gmhdr/kernels.h"

namespace gmhdr {
namespace {

std::vector<double> gaussian_window(int size, double sigma) {
  std::vector<double> w(static_cast<std::size_t>(size) * size);
  const double c = (size - 1) / 2.0;
  double total = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x - c, dy = y - c;
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      w[static_cast<std::size_t>(y) * size + x] = v;
      total += v;
    }
  }
  for (auto& v : w) v /= total;
  return w;
}

std::vector<double> channel_mean(const std::vector<double>& rgb) {
  std::vector<double> luma(rgb.size() / kChannels);
  for (std::size_t p = 0; p < luma.size(); ++p) {
    luma[p] = (rgb[3 * p] + rgb[3 * p + 1] + rgb[3 * p + 2]) / 3.0;
  }
  return luma;
}

}  // namespace

std::string_view domain_name(MetricDomain d) {
  switch (d) {
    case MetricDomain::kLinear: return "linear";
    case MetricDomain::kMuLaw: return "mulaw";
    case MetricDomain::kPu21: return "pu21";
  }
  return "linear";
}

std::optional<MetricDomain> parse_domain(std::string_view name) {
  if (name == "linear") return MetricDomain::kLinear;
  if (name == "mulaw") return MetricDomain::kMuLaw;
  if (name == "pu21") return MetricDomain::kPu21;
  return std::nullopt;
}

DomainPair map_to_domain(const LinearImage& a, const LinearImage& b, MetricDomain domain,
                         const MetricParams& params) {
  require_same_dims(a.width(), a.height(), b.width(), b.height(), "metric");
  DomainPair out;
  out.a.assign(a.data().begin(), a.data().end());
  out.b.assign(b.data().begin(), b.data().end());
  if (domain == MetricDomain::kLinear) return out;

  const double scale = shared_tonemap_scale(a, b);
  if (domain == MetricDomain::kMuLaw) {
    const MuLawParams mp{params.mu};
    auto f = [&](double v) { return mulaw_forward(std::clamp(v / scale, 0.0, 1.0), mp); };
    std::transform(out.a.begin(), out.a.end(), out.a.begin(), f);
    std::transform(out.b.begin(), out.b.end(), out.b.begin(), f);
    return out;
  }

  const Pu21Params pu = Pu21Params::for_variant(params.pu21_variant);
  auto f = [&](double v) { return pu21_encode(std::clamp(v / scale, 0.0, 1.0) * params.l_peak, pu); };
  std::transform(out.a.begin(), out.a.end(), out.a.begin(), f);
  std::transform(out.b.begin(), out.b.end(), out.b.begin(), f);
  out.peak = pu21_encode(params.l_peak, pu) - pu21_encode(pu.l_min, pu);
  return out;
}

double psnr_from_mse(double mse, double peak) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const LinearImage& a, const LinearImage& b, MetricDomain domain,
            const MetricParams& params) {
  const DomainPair d = map_to_domain(a, b, domain, params);
  if (d.a.empty()) throw Error(ErrorCode::kInvalidArgument, "psnr of empty images");
  const double mse = kernels::reduce_sum_sq_diff(d.a.data(), d.b.data(), d.a.size()) /
                     static_cast<double>(d.a.size());
  return psnr_from_mse(mse, d.peak);
}

double ssim(const LinearImage& a, const LinearImage& b, MetricDomain domain,
            const MetricParams& params) {
  const int win = params.ssim_window;
  if (win < 1 || a.width() < static_cast<std::size_t>(win) ||
      a.height() < static_cast<std::size_t>(win)) {
    throw Error(ErrorCode::kInvalidArgument, "ssim: image is smaller than the window");
  }
  const DomainPair d = map_to_domain(a, b, domain, params);
  const std::vector<double> la = channel_mean(d.a);
  const std::vector<double> lb = channel_mean(d.b);
  const std::vector<double> w = gaussian_window(win, params.ssim_sigma);
  const double c1 = (params.ssim_k1 * d.peak) * (params.ssim_k1 * d.peak);
  const double c2 = (params.ssim_k2 * d.peak) * (params.ssim_k2 * d.peak);

  const std::size_t width = a.width();
  const std::size_t nx = a.width() - win + 1;
  const std::size_t ny = a.height() - win + 1;
  std::vector<double> local(nx * ny);
  for (std::size_t y0 = 0; y0 < ny; ++y0) {
    for (std::size_t x0 = 0; x0 < nx; ++x0) {
      double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
      for (int j = 0; j < win; ++j) {
        for (int i = 0; i < win; ++i) {
          const double wk = w[static_cast<std::size_t>(j) * win + i];
          const std::size_t p = (y0 + j) * width + (x0 + i);
          const double va = la[p], vb = lb[p];
          ma += wk * va;
          mb += wk * vb;
          saa += wk * (va * va);
          sbb += wk * (vb * vb);
          sab += wk * (va * vb);
        }
      }
      const double var_a = saa - ma * ma;
      const double var_b = sbb - mb * mb;
      const double cov = sab - ma * mb;
      const double num = (2.0 * (ma * mb) + c1) * (2.0 * cov + c2);
      const double den = ((ma * ma + mb * mb) + c1) * ((var_a + var_b) + c2);
      local[y0 * nx + x0] = num / den;
    }
  }
  return kernels::reduce_sum(local.data(), local.size()) / static_cast<double>(local.size());
}

double gm_l1(const GainMap& g_hat, const GainMap& g) {
  require_same_dims(g_hat.width(), g_hat.height(), g.width(), g.height(), "gm_l1");
  if (g_hat.meta().variant != g.meta().variant) {
    throw Error(ErrorCode::kMetadataMismatch, "gm_l1: gain maps use different variants");
  }
  const auto a = g_hat.codes();
  const auto b = g.codes();
  if (a.empty()) throw Error(ErrorCode::kInvalidArgument, "gm_l1 of empty gain maps");
  // Integer accumulation keeps the result exact on the code lattice.
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::uint64_t>(std::abs(int{a[i]} - int{b[i]}));
  return (static_cast<double>(total) / static_cast<double>(a.size())) / 255.0;
}

double mulaw_l1(const LinearImage& h_hat, const LinearImage& h, double mu) {
  require_same_dims(h_hat.width(), h_hat.height(), h.width(), h.height(), "mulaw_l1");
  if (h.empty()) throw Error(ErrorCode::kInvalidArgument, "mulaw_l1 of empty images");
  const double scale = shared_tonemap_scale(h_hat, h);
  const LinearImage ta = tonemap_mulaw(h_hat, scale, mu);
  const LinearImage tb = tonemap_mulaw(h, scale, mu);
  return kernels::reduce_sum_abs_diff(ta.data().data(), tb.data().data(), ta.data().size()) /
         static_cast<double>(ta.data().size());
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<std::pair<std::string, std::string>> report_params(std::string_view metric,
                                                              MetricDomain domain,
                                                              const MetricParams& params) {
  std::vector<std::pair<std::string, std::string>> out;
  if (metric == "gm_l1") return out;
  if (metric == "mulaw_l1") {
    out.emplace_back("mu", format_real(params.mu));
    out.emplace_back("norm", "max1_shared_peak");
    return out;
  }
  switch (domain) {
    case MetricDomain::kLinear:
      out.emplace_back("peak", "1");
      break;
    case MetricDomain::kMuLaw:
      out.emplace_back("mu", format_real(params.mu));
      out.emplace_back("norm", "max1_shared_peak");
      out.emplace_back("peak", "1");
      break;
    case MetricDomain::kPu21: {
      const Pu21Params pu = Pu21Params::for_variant(params.pu21_variant);
      out.emplace_back("pu21_variant", std::string(pu21_variant_name(params.pu21_variant)));
      out.emplace_back("l_peak", format_real(params.l_peak));
      out.emplace_back("l_min", format_real(pu.l_min));
      out.emplace_back("norm", "max1_shared_peak");
      out.emplace_back("peak", format_real(pu21_encode(params.l_peak, pu) - pu21_encode(pu.l_min, pu)));
      break;
    }
  }
  if (metric == "ssim") {
    out.emplace_back("window", std::to_string(params.ssim_window));
    out.emplace_back("sigma", format_real(params.ssim_sigma));
    out.emplace_back("k1", format_real(params.ssim_k1));
    out.emplace_back("k2", format_real(params.ssim_k2));
    out.emplace_back("luma", "channel_mean");
  }
  return out;
}

std::string to_csv_row(const MetricReport& report) {
  std::string row = report.name;
  row += ',';
  row += domain_name(report.domain);
  row += ',';
  row += format_real(report.value);
  row += ',';
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    if (i) row += ';';
    row += report.params[i].first + "=" + report.params[i].second;
  }
  return row;
}

}  // namespace gmhdr
